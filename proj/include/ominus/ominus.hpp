#ifndef OMINUS_OMINUS_HPP
#define OMINUS_OMINUS_HPP

#include "bigint.hpp"
#include "coset_codes.hpp"
#include "errors.hpp"
#include "finite_field.hpp"
#include "kloosterman.hpp"
#include "matrix.hpp"
#include "moment_recursion.hpp"
#include "ominus_groups.hpp"
#include "serialize.hpp"
#include "version.hpp"

#endif
