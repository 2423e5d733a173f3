#pragma once

#include "hkfs/closed_forms.hpp"
#include "hkfs/errors.hpp"
#include "hkfs/euler.hpp"
#include "hkfs/gamma.hpp"
#include "hkfs/han_monsky.hpp"
#include "hkfs/limit.hpp"
#include "hkfs/phi.hpp"
#include "hkfs/polynomial.hpp"
#include "hkfs/primes.hpp"
#include "hkfs/rational.hpp"
#include "hkfs/rational_series.hpp"
#include "hkfs/rule_file.hpp"
#include "hkfs/sequence.hpp"
#include "hkfs/sparse_rank.hpp"
#include "hkfs/symbolic.hpp"
