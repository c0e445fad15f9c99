#pragma once

#include "dpcolor/cycles.hpp"
#include "dpcolor/discharging.hpp"
#include "dpcolor/dp_core.hpp"
#include "dpcolor/embedding.hpp"
#include "dpcolor/error.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/graph6.hpp"
#include "dpcolor/io.hpp"
#include "dpcolor/reducibility.hpp"
#include "dpcolor/solver.hpp"
