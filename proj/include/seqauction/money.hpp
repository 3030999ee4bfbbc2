// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SEQAUCTION_MONEY_HPP_
#define SEQAUCTION_MONEY_HPP_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace seqauction {

// Exact rational amount. mpq_class keeps values canonical after every
// arithmetic operation; values built from strings go through ParseMoney.
using Money = mpq_class;

// Accepts "p/q", "p", "-p/q" and finite decimals such as "0.25".
// Throws std::invalid_argument on malformed input or a zero denominator.
Money ParseMoney(std::string_view text);

// Canonical "p/q" form; integers print without a denominator.
std::string ToString(const Money& m);

Money Rational(long num, long den = 1);

inline const Money& Max(const Money& a, const Money& b) { return a < b ? b : a; }
inline const Money& Min(const Money& a, const Money& b) { return b < a ? b : a; }

}  // namespace seqauction

#endif  // SEQAUCTION_MONEY_HPP_
