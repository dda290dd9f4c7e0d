#pragma once

#include "shield/error.hpp"
#include "shield/geometry.hpp"
#include "shield/helmholtz.hpp"
#include "shield/parallel.hpp"
#include "shield/quadrature.hpp"
#include "shield/scenario.hpp"
#include "shield/shellform.hpp"
#include "shield/sources.hpp"
#include "shield/timedomain.hpp"
