// Umbrella header.

#ifndef PROPO_PROPO_HPP
#define PROPO_PROPO_HPP

#include "propo/audit.hpp"
#include "propo/constructions.hpp"
#include "propo/core.hpp"
#include "propo/io.hpp"
#include "propo/montecarlo.hpp"
#include "propo/search.hpp"
#include "propo/verify.hpp"

#endif  // PROPO_PROPO_HPP
