#pragma once

#include "fsconn/analysis.hpp"
#include "fsconn/error.hpp"
#include "fsconn/expr.hpp"
#include "fsconn/fuzzy_soft_set.hpp"
#include "fsconn/io.hpp"
#include "fsconn/lifted.hpp"
#include "fsconn/scalar.hpp"
#include "fsconn/script.hpp"
#include "fsconn/tag.hpp"
