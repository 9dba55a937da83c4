#pragma once

#include "mexcode/canonical.hpp"
#include "mexcode/config.hpp"
#include "mexcode/encode.hpp"
#include "mexcode/error.hpp"
#include "mexcode/graph.hpp"
#include "mexcode/index.hpp"
#include "mexcode/oracle.hpp"
#include "mexcode/parser.hpp"
