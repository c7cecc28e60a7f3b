#pragma once

#include <cvl/errors.hpp>
#include <cvl/arith.hpp>
#include <cvl/bqf.hpp>
#include <cvl/linalg.hpp>
#include <cvl/lattice.hpp>
#include <cvl/quat.hpp>
#include <cvl/theta.hpp>
#include <cvl/heegner.hpp>
#include <cvl/lfun.hpp>
