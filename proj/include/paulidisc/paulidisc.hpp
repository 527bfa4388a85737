#pragma once

#include "paulidisc/discrimination.hpp"
#include "paulidisc/linalg.hpp"
#include "paulidisc/matrix.hpp"
#include "paulidisc/pauli_dynamics.hpp"
#include "paulidisc/scenarios.hpp"
#include "paulidisc/time_opt.hpp"
