#pragma once

#include "vpart/errors.hpp"
#include "vpart/rational.hpp"
#include "vpart/multipoly.hpp"
#include "vpart/series.hpp"
#include "vpart/linalg.hpp"
#include "vpart/lp.hpp"
#include "vpart/matrix_core.hpp"
#include "vpart/polytope.hpp"
#include "vpart/brion.hpp"
#include "vpart/chambers.hpp"
#include "vpart/todd.hpp"
#include "vpart/interpolation.hpp"
#include "vpart/oracle.hpp"
#include "vpart/presets.hpp"
#include "vpart/io.hpp"
