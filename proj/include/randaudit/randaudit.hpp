#pragma once

#include "randaudit/any_generator.hpp"
#include "randaudit/audit.hpp"
#include "randaudit/bits.hpp"
#include "randaudit/bounds.hpp"
#include "randaudit/errors.hpp"
#include "randaudit/generators.hpp"
#include "randaudit/hash_prng.hpp"
#include "randaudit/integers.hpp"
#include "randaudit/sampling.hpp"
#include "randaudit/seed.hpp"
#include "randaudit/source.hpp"
#include "randaudit/stats.hpp"
