#pragma once

#include "errors.hpp"
#include "instance.hpp"
#include "generator.hpp"
#include "instance_io.hpp"
#include "model.hpp"
#include "brute_force.hpp"
#include "tour.hpp"
#include "ctp.hpp"
#include "phase1.hpp"
#include "phase3.hpp"
#include "driver.hpp"
#include "bench.hpp"
#include "plot.hpp"
#include "solution_io.hpp"
