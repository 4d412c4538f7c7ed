// Copyright 2026 The Streetaddr Authors
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

#ifndef STREETADDR_ADDRESS_H_
#define STREETADDR_ADDRESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace streetaddr {

// <house><block>.<region><road>.<city>.<state?><country>[.<year>]
struct AddressRecord {
  std::uint64_t house_number = 0;
  std::string block;   // [A-Z]+
  std::string region;  // [A-Z]{1,2}
  std::uint64_t road_number = 1;
  std::string city;                       // [A-Z][A-Za-z]*
  std::optional<std::string> state_code;  // [A-Z][a-z]
  std::string country_code;               // [A-Z][a-z]
  std::optional<int> version_year;        // 0..9999, written with four digits

  friend bool operator==(const AddressRecord&, const AddressRecord&) = default;
};

// Throws ValidationError naming the first bad field.
void validate(const AddressRecord& rec);

std::string format_address(const AddressRecord& rec);

// Strict inverse of format_address. Throws ParseError whose field() is the
// 1-based field index, or 0 for a wrong field count.
AddressRecord parse_address(std::string_view text);

}  // namespace streetaddr

#endif  // STREETADDR_ADDRESS_H_
