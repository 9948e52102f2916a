// Copyright 2026 The FaaS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAAS_GROUP_PROFILE_HPP_
#define FAAS_GROUP_PROFILE_HPP_

#include <string>
#include <string_view>

#include "faas/errors.hpp"

namespace faas {

enum class Profile { kProduction, kTest, kToy };

inline std::string_view ProfileName(Profile p) {
  switch (p) {
    case Profile::kProduction:
      return "production";
    case Profile::kTest:
      return "test";
    case Profile::kToy:
      return "toy";
  }
  return "unknown";
}

inline Profile ParseProfile(std::string_view name) {
  if (name == "production") return Profile::kProduction;
  if (name == "test") return Profile::kTest;
  if (name == "toy") return Profile::kToy;
  throw InputError("unknown-profile", "unknown group profile '" + std::string(name) + "'");
}

}  // namespace faas

#endif  // FAAS_GROUP_PROFILE_HPP_
