#ifndef STEKLOV_STEKLOV_HPP
#define STEKLOV_STEKLOV_HPP

#include "steklov/analytic_shell.hpp"
#include "steklov/eigensolver.hpp"
#include "steklov/geometry.hpp"
#include "steklov/inequality_harness.hpp"
#include "steklov/io.hpp"

#endif  // STEKLOV_STEKLOV_HPP
