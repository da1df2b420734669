#pragma once

#include "rwp/error.hpp"
#include "rwp/observables.hpp"
#include "rwp/packet.hpp"
#include "rwp/parallel.hpp"
#include "rwp/physics.hpp"
#include "rwp/radial.hpp"
