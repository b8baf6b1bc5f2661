// Copyright 2026 The Repeater Scaling Authors
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

#pragma once

#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace repeater::csv {

/// Shortest decimal text that parses back to the same double. Independent of
/// the global locale.
std::string format(double value);

/// Formats a present value, or an empty field when absent.
std::string format(const std::optional<double>& value);

std::string format(bool value);

/// Quotes a field when it contains a comma, quote or line break.
std::string escape(std::string_view field);

/// Writes the fields separated by commas and terminated by a newline.
void write_row(std::ostream& out, std::initializer_list<std::string_view> fields);

}  // namespace repeater::csv
