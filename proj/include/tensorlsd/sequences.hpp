#pragma once

// Canonical index sequences: the alpha-sequences over [m] and i-sequences
// over [n] that label terms of the trace expansion. A sequence is canonical
// when it starts at 1 and every new value is exactly one more than the
// running maximum, i.e. it is the first-appearance relabeling of its class.

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tensorlsd {

// Upper bound on sequence length for every exhaustive enumerator. Bell(12)
// is already 4.2 million; larger requests are rejected rather than truncated.
inline constexpr int kDefaultLengthCap = 12;

class CanonicalSequence {
 public:
  // Validates `values`; throws UsageError if they are not canonical.
  explicit CanonicalSequence(std::vector<int> values);
  CanonicalSequence(std::initializer_list<int> values)
      : CanonicalSequence(std::vector<int>(values)) {}

  std::span<const int> values() const { return values_; }
  int length() const { return static_cast<int>(values_.size()); }
  // Number of distinct values; the values are exactly {1, ..., distinct()}.
  int distinct() const { return distinct_; }
  int operator[](std::size_t pos) const { return values_[pos]; }

  std::string to_string() const;

  friend bool operator==(const CanonicalSequence&, const CanonicalSequence&) = default;
  friend auto operator<=>(const CanonicalSequence& a, const CanonicalSequence& b) {
    return a.values_ <=> b.values_;
  }

 private:
  struct Trusted {};
  CanonicalSequence(Trusted, std::vector<int> values, int distinct)
      : values_(std::move(values)), distinct_(distinct) {}

  std::vector<int> values_;
  int distinct_ = 0;

  friend CanonicalSequence canonicalize(std::span<const int> seq);
  friend void for_each_canonical(int, std::optional<int>,
                                 const std::function<void(const CanonicalSequence&)>&, int);
};

bool is_canonical(std::span<const int> seq);

// First-appearance relabeling. Two inputs give the same output iff one is a
// value permutation of the other. Throws UsageError on empty input.
CanonicalSequence canonicalize(std::span<const int> seq);
inline CanonicalSequence canonicalize(std::initializer_list<int> seq) {
  return canonicalize(std::span<const int>(seq.begin(), seq.size()));
}

// Visits every canonical sequence of length p (optionally only those with
// exactly s distinct values) in lexicographic order without materializing
// the list. Throws UsageError if p < 1 or p > cap.
void for_each_canonical(int p, std::optional<int> s,
                        const std::function<void(const CanonicalSequence&)>& visit,
                        int cap = kDefaultLengthCap);

// Materialized form of for_each_canonical. s > p yields an empty list.
std::vector<CanonicalSequence> enumerate_canonical(int p, std::optional<int> s = std::nullopt,
                                                   int cap = kDefaultLengthCap);

// Set partitions of [n] (optionally with exactly q blocks), each encoded as
// the canonical block-label sequence: blocks are numbered by least element.
std::vector<CanonicalSequence> enumerate_partitions(int n, std::optional<int> q = std::nullopt,
                                                    int cap = kDefaultLengthCap);

// True iff there are positions j1 < j2 < j3 < j4 with
// a[j1] == a[j3] != a[j2] == a[j4].
bool is_crossing(std::span<const int> seq);
inline bool is_crossing(const CanonicalSequence& a) { return is_crossing(a.values()); }

// Frequency of value t in the sequence; 0 when t is not one of its values.
int degree(const CanonicalSequence& a, int t);

// (degree(a,1), ..., degree(a,s)).
std::vector<int> degree_profile(const CanonicalSequence& a);

}  // namespace tensorlsd
