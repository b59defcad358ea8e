#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "digitlaw/digits.hpp"
#include "digitlaw/gbl.hpp"
#include "digitlaw/primes.hpp"

namespace digitlaw {

enum class Sequence { kPrimes, kZeros, kCramer, kIntegers };

Sequence parse_sequence(std::string_view name);
const char* to_string(Sequence s);
// Zeros thicken with height; everything else thins out or stays flat.
Convention convention_of(Sequence s);

// D when n == 10^D with D >= 1, otherwise kUsage.
int decade_exponent(std::uint64_t n);

// k-digit histogram of the integers 1..n, in closed form.
DigitHistogram integer_digit_histogram(std::uint64_t n, int k);

// pi(x-)/pi(n) on [1, n]. The left limit makes decade masses equal the
// first-digit counts of the primes below n exactly.
CdfFunction prime_pi_cdf(std::shared_ptr<const PrimePi> pi, std::uint64_t n);

// Li(x)/Li(n) on [1, n] with Li = 0 on [1, 2].
CdfFunction li_cdf(double n);

}  // namespace digitlaw
