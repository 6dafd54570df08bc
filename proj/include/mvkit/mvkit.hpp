#ifndef MVKIT_MVKIT_HPP
#define MVKIT_MVKIT_HPP

#include "mvkit/algebra.hpp"
#include "mvkit/axioms.hpp"
#include "mvkit/dsl.hpp"
#include "mvkit/error.hpp"
#include "mvkit/group.hpp"
#include "mvkit/lgroup_maps.hpp"
#include "mvkit/rational.hpp"
#include "mvkit/represent.hpp"
#include "mvkit/rng.hpp"
#include "mvkit/sampling.hpp"
#include "mvkit/spectra.hpp"
#include "mvkit/term.hpp"

#endif
