#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "fraudscope/error.hpp"
#include "fraudscope/sampling.hpp"
#include "fixtures.hpp"

using namespace fraudscope;
using fixture::observation;

namespace {

std::vector<Observation> balanced(std::size_t fraud, std::size_t control) {
  std::vector<Observation> out;
  for (std::size_t i = 0; i < fraud; ++i) out.push_back(observation("F" + std::to_string(i), 2000, Industry::Trade, true));
  for (std::size_t i = 0; i < control; ++i) out.push_back(observation("C" + std::to_string(i), 2000, Industry::Trade, false));
  return out;
}

}  // namespace

TEST_CASE("forced and impossible matches") {
  const std::vector<Observation> fraud{observation("F", 2001, Industry::Trade, true)};
  const std::vector<Observation> pool{observation("C", 2001, Industry::Trade, false)};
  const auto one = match_controls(fraud, pool, 1);
  REQUIRE(one.pairs.size() == 1);
  CHECK(one.pairs[0].control.company_id == "C");
  CHECK(one.unmatched.empty());

  const std::vector<Observation> elsewhere{observation("C", 2002, Industry::Trade, false),
                                           observation("D", 2001, Industry::Finance, false)};
  const auto none = match_controls(fraud, elsewhere, 1);
  CHECK(none.pairs.empty());
  REQUIRE(none.unmatched.size() == 1);
  CHECK(none.unmatched[0].company_id == "F");
}

TEST_CASE("controls are never reused") {
  std::vector<Observation> fraud, pool;
  for (int i = 0; i < 3; ++i) fraud.push_back(observation("F" + std::to_string(i), 2001, Industry::Trade, true));
  for (int i = 0; i < 2; ++i) pool.push_back(observation("C" + std::to_string(i), 2001, Industry::Trade, false));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = match_controls(fraud, pool, seed);
    CHECK(m.pairs.size() == 2);
    CHECK(m.unmatched.size() == 1);
    CHECK(m.pairs[0].control.company_id != m.pairs[1].control.company_id);
    for (const auto& p : m.pairs) {
      CHECK(p.fraud.fiscal_year == p.control.fiscal_year);
      CHECK(p.fraud.industry == p.control.industry);
      CHECK(p.fraud.fraud);
      CHECK_FALSE(p.control.fraud);
    }
  }
}

TEST_CASE("matching rejects mislabelled inputs") {
  const std::vector<Observation> a{observation("F", 2001, Industry::Trade, false)};
  CHECK_THROWS_AS(match_controls(a, {}, 1), std::invalid_argument);
}

TEST_CASE("pool order does not change what is matched per stratum") {
  std::vector<Observation> fraud, pool;
  for (int y = 2000; y < 2004; ++y) {
    for (int i = 0; i < 3; ++i) fraud.push_back(observation("F" + std::to_string(y * 10 + i), y, Industry::Services, true));
    for (int i = 0; i < y - 1999; ++i) pool.push_back(observation("C" + std::to_string(y * 10 + i), y, Industry::Services, false));
  }
  auto reversed = pool;
  std::reverse(reversed.begin(), reversed.end());
  const auto a = match_controls(fraud, pool, 42);
  const auto b = match_controls(fraud, reversed, 42);
  REQUIRE(a.pairs.size() == b.pairs.size());
  for (std::size_t i = 0; i < a.pairs.size(); ++i) CHECK(a.pairs[i].control.company_id == b.pairs[i].control.company_id);
  CHECK(a.pairs.size() == 1 + 2 + 3 + 3);
}

TEST_CASE("stratified folds balance each class") {
  const auto obs = balanced(50, 50);
  const auto f = stratified_folds(obs, 10, 7);
  for (std::size_t k = 0; k < 10; ++k) {
    std::size_t fraud = 0, control = 0;
    for (auto i : f.test_indices(k)) (obs[i].fraud ? fraud : control) += 1;
    CHECK(fraud == 5);
    CHECK(control == 5);
  }
  CHECK(stratified_folds(obs, 10, 7).fold_of == f.fold_of);
}

TEST_CASE("eleven per class over ten folds") {
  const auto obs = balanced(11, 11);
  const auto f = stratified_folds(obs, 10, 3);
  std::multiset<std::size_t> sizes;
  for (std::size_t k = 0; k < 10; ++k) sizes.insert(f.test_indices(k).size());
  CHECK(sizes.count(4) == 1);
  CHECK(sizes.count(2) == 9);
}

TEST_CASE("folds partition the sample and stay balanced for odd counts") {
  const auto obs = balanced(37, 23);
  const auto f = stratified_folds(obs, 7, 99);
  std::vector<int> seen(obs.size(), 0);
  std::vector<std::size_t> fraud_per_fold, control_per_fold;
  for (std::size_t k = 0; k < 7; ++k) {
    std::size_t fr = 0, co = 0;
    for (auto i : f.test_indices(k)) {
      ++seen[i];
      (obs[i].fraud ? fr : co) += 1;
    }
    const auto train = f.train_indices(k);
    CHECK(train.size() + f.test_indices(k).size() == obs.size());
    fraud_per_fold.push_back(fr);
    control_per_fold.push_back(co);
  }
  for (int s : seen) CHECK(s == 1);
  const auto spread = [](const std::vector<std::size_t>& v) {
    return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end());
  };
  CHECK(spread(fraud_per_fold) <= 1);
  CHECK(spread(control_per_fold) <= 1);
}

TEST_CASE("fold errors") {
  CHECK_THROWS_WITH_AS(stratified_folds(balanced(9, 20), 10, 1), "class too small to stratify", DataError);
  CHECK_THROWS_AS(stratified_folds(balanced(9, 20), 1, 1), std::invalid_argument);
}

TEST_CASE("fold CSV export") {
  const auto obs = balanced(2, 2);
  const auto f = stratified_folds(obs, 2, 1);
  std::ostringstream out;
  write_folds_csv(out, obs, f);
  const auto text = out.str();
  CHECK(text.rfind("company_id,fiscal_year,fold\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 5);
}
