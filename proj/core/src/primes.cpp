#include "psc/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "psc/error.hpp"
#include "psc/parallel.hpp"

namespace psc {

SieveSegment::SieveSegment(std::uint64_t lo, std::uint64_t hi, std::span<const std::uint32_t> base_primes)
    : lo_(lo), hi_(std::max(lo, hi)) {
  first_odd_ = lo_ | 1;
  odd_count_ = hi_ > first_odd_ ? (hi_ - first_odd_ + 1) / 2 : 0;
  bits_.assign((odd_count_ + 63) / 64, ~std::uint64_t{0});
  if (odd_count_ % 64 != 0) bits_.back() = (std::uint64_t{1} << (odd_count_ % 64)) - 1;
  if (odd_count_ == 0) return;
  if (first_odd_ == 1) bits_[0] &= ~std::uint64_t{1};

  for (const std::uint32_t p32 : base_primes) {
    const std::uint64_t p = p32;
    if (p == 2) continue;
    if (p * p >= hi_) break;
    std::uint64_t m = (first_odd_ + p - 1) / p * p;
    if ((m & 1) == 0) m += p;
    m = std::max(m, p * p);
    for (std::uint64_t j = (m - first_odd_) / 2; j < odd_count_; j += p)
      bits_[j >> 6] &= ~(std::uint64_t{1} << (j & 63));
  }
}

bool SieveSegment::is_prime(std::uint64_t n) const {
  if (n < lo_ || n >= hi_) return false;
  if (n == 2) return true;
  if ((n & 1) == 0) return false;
  const std::uint64_t j = (n - first_odd_) / 2;
  return (bits_[j >> 6] >> (j & 63)) & 1;
}

std::uint64_t SieveSegment::count() const {
  std::uint64_t c = (lo_ <= 2 && 2 < hi_) ? 1 : 0;
  for (const auto w : bits_) c += static_cast<std::uint64_t>(std::popcount(w));
  return c;
}

void SieveSegment::append_primes(std::vector<std::uint64_t>& out) const {
  if (lo_ <= 2 && 2 < hi_) out.push_back(2);
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    std::uint64_t word = bits_[w];
    while (word != 0) {
      const int b = std::countr_zero(word);
      out.push_back(first_odd_ + 2 * (64 * w + static_cast<std::uint64_t>(b)));
      word &= word - 1;
    }
  }
}

std::vector<std::uint32_t> small_primes(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  using u128 = unsigned __int128;
  auto r = std::min<std::uint64_t>(static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n))), 0xFFFFFFFFULL);
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (r < 0xFFFFFFFFULL && static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

namespace {

struct SegmentPlan {
  std::uint64_t begin;  // inclusive
  std::uint64_t end;    // exclusive
  std::vector<std::uint32_t> base;

  std::size_t size() const {
    if (end <= begin) return 0;
    return static_cast<std::size_t>((end - 1) / kSegmentWidth - begin / kSegmentWidth + 1);
  }

  std::pair<std::uint64_t, std::uint64_t> segment(std::size_t i) const {
    const std::uint64_t k = begin / kSegmentWidth + i;
    return {std::max(k * kSegmentWidth, begin), std::min((k + 1) * kSegmentWidth, end)};
  }
};

SegmentPlan plan(std::uint64_t lo, std::uint64_t hi, const Caps& caps) {
  if (hi > caps.prime_limit)
    throw Error(ErrorCode::RangeTooLarge,
                "upper end " + std::to_string(hi) + " exceeds the prime cap " + std::to_string(caps.prime_limit));
  SegmentPlan p{lo + 1, hi + 1, {}};
  if (hi > lo) p.base = small_primes(static_cast<std::uint32_t>(isqrt(hi)));
  return p;
}

}  // namespace

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi, const Exec& exec, const Caps& caps) {
  const SegmentPlan p = plan(lo, hi, caps);
  auto parts = detail::map_chunks<std::vector<std::uint64_t>>(p.size(), exec.jobs, [&](std::size_t i) {
    const auto [a, b] = p.segment(i);
    std::vector<std::uint64_t> out;
    SieveSegment(a, b, p.base).append_primes(out);
    return out;
  });
  std::size_t total = 0;
  for (const auto& part : parts) total += part.size();
  std::vector<std::uint64_t> out;
  out.reserve(total);
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::uint64_t prime_count(std::uint64_t x, const Exec& exec, const Caps& caps) {
  const SegmentPlan p = plan(0, x, caps);
  const auto counts = detail::map_chunks<std::uint64_t>(p.size(), exec.jobs, [&](std::size_t i) {
    const auto [a, b] = p.segment(i);
    return SieveSegment(a, b, p.base).count();
  });
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  return total;
}

MangoldtTable::MangoldtTable(std::uint64_t limit, std::vector<MangoldtEntry> entries)
    : limit_(limit), entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const auto& a, const auto& b) { return a.n < b.n; });
}

std::optional<std::uint64_t> MangoldtTable::base_prime(std::uint64_t n) const {
  const auto it = std::lower_bound(entries_.begin(), entries_.end(), n,
                                   [](const MangoldtEntry& e, std::uint64_t v) { return e.n < v; });
  if (it == entries_.end() || it->n != n) return std::nullopt;
  return it->p;
}

double MangoldtTable::lambda(std::uint64_t n) const {
  const auto p = base_prime(n);
  return p ? std::log(static_cast<double>(*p)) : 0.0;
}

std::span<const MangoldtEntry> MangoldtTable::range(std::uint64_t lo, std::uint64_t hi) const {
  auto key = [](const MangoldtEntry& e, std::uint64_t v) { return e.n <= v; };
  const auto a = std::lower_bound(entries_.begin(), entries_.end(), lo, key);
  const auto b = std::lower_bound(a, entries_.end(), hi, key);
  return {a, b};
}

double MangoldtTable::psi() const {
  double sum = 0, comp = 0;
  for (const auto& e : entries_) {
    const double v = std::log(static_cast<double>(e.p));
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  return sum + comp;
}

MangoldtTable mangoldt_table(std::uint64_t x, const Exec& exec, const Caps& caps) {
  if (x > caps.mangoldt_limit)
    throw Error(ErrorCode::RangeTooLarge,
                "Mangoldt table limit " + std::to_string(x) + " exceeds " + std::to_string(caps.mangoldt_limit));
  std::vector<MangoldtEntry> entries;
  for (const std::uint64_t p : primes_in(1, x, exec, caps)) {
    std::uint64_t q = p;
    for (;;) {
      entries.push_back({q, p});
      if (q > x / p) break;
      q *= p;
    }
  }
  return MangoldtTable(x, std::move(entries));
}

}  // namespace psc
