#pragma once

#include "bounds.hpp"
#include "circuit.hpp"
#include "circuit_check.hpp"
#include "circuit_compile.hpp"
#include "constructions.hpp"
#include "decoder.hpp"
#include "enumeration.hpp"
#include "errors.hpp"
#include "int128.hpp"
#include "matrix.hpp"
#include "matrix_io.hpp"
#include "rmds_search.hpp"
#include "verification.hpp"
