#pragma once

#include "spinscale/classifier.hpp"
#include "spinscale/hermitian_eig.hpp"
#include "spinscale/polarization_map.hpp"
#include "spinscale/scan.hpp"
#include "spinscale/spin_algebra.hpp"
