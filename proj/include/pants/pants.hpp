#pragma once

#include "pants/approx.hpp"
#include "pants/boxsolver.hpp"
#include "pants/cli.hpp"
#include "pants/collinear.hpp"
#include "pants/error.hpp"
#include "pants/geom.hpp"
#include "pants/io.hpp"
#include "pants/model.hpp"
#include "pants/oracle.hpp"
#include "pants/random.hpp"
#include "pants/svg.hpp"
