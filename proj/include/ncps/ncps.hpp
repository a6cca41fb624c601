#pragma once

#include "ncps/config.hpp"
#include "ncps/error.hpp"
#include "ncps/gaussian_family.hpp"
#include "ncps/matrix.hpp"
#include "ncps/nc_phase_space.hpp"
#include "ncps/scan.hpp"
#include "ncps/separability.hpp"
#include "ncps/serialization.hpp"
#include "ncps/symplectic_core.hpp"
