// Copyright 2026 The offeropt Authors
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

#ifndef OFFEROPT_TESTS_TEST_UTIL_HPP_
#define OFFEROPT_TESTS_TEST_UTIL_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "offeropt/model.hpp"

namespace offeropt::testing {

// With gamma this large the acceptance probability rounds to exactly 1, so
// the revenue of offer x is p - x.
inline constexpr double kSureGamma = 50.0;

inline Subscriber sub(SubscriberId id, double p, double alpha, double gamma) {
  return Subscriber{id, p, alpha, gamma};
}

inline OfferCatalog catalog(const std::vector<double>& values,
                            const std::vector<std::int64_t>& counts) {
  OfferCatalog c;
  for (std::size_t j = 0; j < values.size(); ++j) {
    c.offers.push_back(OfferType{values[j], counts[j], std::nullopt});
  }
  return c;
}

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& name)
      : path_(std::filesystem::temp_directory_path() / ("offeropt_test_" + name)) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace offeropt::testing

#endif  // OFFEROPT_TESTS_TEST_UTIL_HPP_
