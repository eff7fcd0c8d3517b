// Umbrella header.
#pragma once

#include "qf/floquet.hpp"
#include "qf/free_group.hpp"
#include "qf/quasiperiodic.hpp"
#include "qf/symplectic.hpp"
#include "qf/trace_map.hpp"
