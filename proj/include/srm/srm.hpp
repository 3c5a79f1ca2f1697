#ifndef SRM_SRM_HPP
#define SRM_SRM_HPP

#include "af.hpp"
#include "bench.hpp"
#include "generator.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "solver.hpp"
#include "stability.hpp"

#endif
