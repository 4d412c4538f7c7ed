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

#include "streetaddr/address.h"

#include <algorithm>
#include <charconv>
#include <vector>

#include <fmt/format.h>

#include "streetaddr/error.h"

namespace streetaddr {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alpha(char c) { return is_upper(c) || is_lower(c); }

bool all_upper(std::string_view s) { return !s.empty() && std::all_of(s.begin(), s.end(), is_upper); }

bool title_pair(std::string_view s) { return s.size() == 2 && is_upper(s[0]) && is_lower(s[1]); }

bool city_token(std::string_view s) {
  return !s.empty() && is_upper(s[0]) && std::all_of(s.begin(), s.end(), is_alpha);
}

// Canonical decimal: no sign, no leading zeros except "0" itself.
std::uint64_t parse_number(std::string_view s, int field, const char* what) {
  if (s.empty()) throw ParseError(fmt::format("field {}: missing {}", field, what), field);
  if (s.size() > 1 && s[0] == '0') {
    throw ParseError(fmt::format("field {}: {} has a leading zero", field, what), field);
  }
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError(fmt::format("field {}: {} is not a valid number", field, what), field);
  }
  return v;
}

std::vector<std::string_view> split_dots(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t dot = s.find('.', start);
    out.push_back(s.substr(start, dot == std::string_view::npos ? std::string_view::npos : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

}  // namespace

void validate(const AddressRecord& rec) {
  if (!all_upper(rec.block)) throw ValidationError("block must be one or more letters A-Z");
  if (rec.region.size() > 2 || !all_upper(rec.region)) {
    throw ValidationError("region must be one or two letters A-Z");
  }
  if (rec.road_number == 0) throw ValidationError("road number must be positive");
  if (!city_token(rec.city)) throw ValidationError("city must be alphabetic with an uppercase first letter");
  if (rec.state_code && !title_pair(*rec.state_code)) {
    throw ValidationError("state code must be two letters, title case");
  }
  if (!title_pair(rec.country_code)) throw ValidationError("country code must be two letters, title case");
  if (rec.version_year && (*rec.version_year < 0 || *rec.version_year > 9999)) {
    throw ValidationError("version year must have four digits");
  }
}

std::string format_address(const AddressRecord& rec) {
  validate(rec);
  std::string out = fmt::format("{}{}.{}{}.{}.{}{}", rec.house_number, rec.block, rec.region,
                                rec.road_number, rec.city, rec.state_code.value_or(""),
                                rec.country_code);
  if (rec.version_year) out += fmt::format(".{:04d}", *rec.version_year);
  return out;
}

AddressRecord parse_address(std::string_view text) {
  const auto fields = split_dots(text);
  if (fields.size() != 4 && fields.size() != 5) {
    throw ParseError(fmt::format("expected 4 or 5 dot-separated fields, got {}", fields.size()), 0);
  }
  AddressRecord rec;

  const std::string_view house = fields[0];
  const auto house_digits = static_cast<std::size_t>(
      std::find_if_not(house.begin(), house.end(), is_digit) - house.begin());
  if (house_digits == 0 || house_digits == house.size() || !all_upper(house.substr(house_digits))) {
    throw ParseError("field 1: house must be digits followed by letters A-Z", 1);
  }
  rec.house_number = parse_number(house.substr(0, house_digits), 1, "house number");
  rec.block = std::string(house.substr(house_digits));

  const std::string_view road = fields[1];
  const auto road_letters = static_cast<std::size_t>(
      std::find_if_not(road.begin(), road.end(), is_upper) - road.begin());
  if (road_letters < 1 || road_letters > 2 || road_letters == road.size() ||
      !std::all_of(road.begin() + static_cast<std::ptrdiff_t>(road_letters), road.end(), is_digit)) {
    throw ParseError("field 2: road must be one or two letters A-Z followed by digits", 2);
  }
  rec.region = std::string(road.substr(0, road_letters));
  rec.road_number = parse_number(road.substr(road_letters), 2, "road number");
  if (rec.road_number == 0) throw ParseError("field 2: road number must be positive", 2);

  if (!city_token(fields[2])) {
    throw ParseError("field 3: city must be alphabetic with an uppercase first letter", 3);
  }
  rec.city = std::string(fields[2]);

  const std::string_view geo = fields[3];
  if (geo.size() == 4 && title_pair(geo.substr(0, 2)) && title_pair(geo.substr(2))) {
    rec.state_code = std::string(geo.substr(0, 2));
    rec.country_code = std::string(geo.substr(2));
  } else if (title_pair(geo)) {
    rec.country_code = std::string(geo);
  } else {
    throw ParseError("field 4: expected country or state+country as two-letter title-case codes", 4);
  }

  if (fields.size() == 5) {
    const std::string_view year = fields[4];
    if (year.size() != 4 || !std::all_of(year.begin(), year.end(), is_digit)) {
      throw ParseError("field 5: version year must be four digits", 5);
    }
    int y = 0;
    std::from_chars(year.data(), year.data() + year.size(), y);
    rec.version_year = y;
  }
  return rec;
}

}  // namespace streetaddr
