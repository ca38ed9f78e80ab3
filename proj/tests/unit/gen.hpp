#pragma once

#include "tropcalc/random.hpp"

namespace gen = tc::gen;
