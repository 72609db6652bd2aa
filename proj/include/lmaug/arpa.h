// lmaug/arpa.h

// Copyright 2026  lmaug authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LMAUG_ARPA_H_
#define LMAUG_ARPA_H_

#include <istream>
#include <ostream>
#include <string>

#include "lmaug/backoff-model.h"

namespace lmaug {

// Layout written:
//
//   \data\ (header)
//   ngram 1=<count>
//   ...
//   <blank>
//   \1-grams:
//   <log10prob>\t<w1>\t<log10backoff>
//   ...
//   <blank>
//   \2-grams:
//   <log10prob>\t<w1 w2>[\t<log10backoff>]
//   ...
//   <blank>
//   \end\ (terminator)
//
// Backoff weights are written for every entry below the maximum order.
// Orders without entries get an empty section.  Values carry 7 decimals.
void WriteArpa(std::ostream &os, const BackoffModel &model);
void WriteArpaFile(const std::string &path, const BackoffModel &model);

// Accepts the layout above, with or without empty sections, and tolerates
// missing backoff fields.  Throws FormatError on malformed headers, unknown
// sections, bad numbers or a declared count that does not match the number
// of entries read.
BackoffModel ReadArpa(std::istream &is);
BackoffModel ReadArpaFile(const std::string &path);

}  // namespace lmaug

#endif  // LMAUG_ARPA_H_
