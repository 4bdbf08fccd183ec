#include "gapsched/generate.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

namespace gapsched {

namespace {

constexpr std::array<std::pair<Family, const char*>, 5> kNames{{
    {Family::uniform_windows, "uniform-windows"},
    {Family::tight_sprinkle, "tight-sprinkle"},
    {Family::agreeable, "agreeable"},
    {Family::release_only, "release-only"},
    {Family::clustered, "clustered"},
}};

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : gen_(seed) {}
  Slot operator()(Slot lo, Slot hi) { return std::uniform_int_distribution<Slot>(lo, hi)(gen_); }

  // n distinct slots from [0, horizon), ascending.
  std::vector<Slot> distinct(std::size_t n, Slot horizon) {
    if (horizon > static_cast<Slot>(4 * n + 1024)) {
      std::set<Slot> picked;
      while (picked.size() < n) picked.insert((*this)(0, horizon - 1));
      return {picked.begin(), picked.end()};
    }
    std::vector<Slot> all(static_cast<std::size_t>(horizon));
    for (Slot t = 0; t < horizon; ++t) all[static_cast<std::size_t>(t)] = t;
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(all[i], all[static_cast<std::size_t>((*this)(static_cast<Slot>(i), horizon - 1))]);
    }
    all.resize(n);
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

std::string to_string(Family family) {
  for (auto [f, name] : kNames) {
    if (f == family) return name;
  }
  return "unknown";
}

std::optional<Family> parse_family(const std::string& name) {
  for (auto [f, n] : kNames) {
    if (name == n) return f;
  }
  return std::nullopt;
}

Instance generate(const GenerateOptions& o) {
  if (o.horizon <= 0 && o.n > 0) throw InvalidArgument("generate: horizon must be positive");
  const bool deadlines = o.family != Family::release_only;
  if (o.feasible && deadlines && static_cast<Slot>(o.n) > o.horizon) {
    throw InvalidArgument("generate: a feasible instance needs horizon >= n");
  }
  Draw draw(o.seed);
  const Slot h = o.horizon;
  std::vector<std::pair<Slot, Slot>> win;  // (release, deadline)

  // Planted slots for feasible instances, otherwise free draws.
  std::vector<Slot> plant;
  if (o.feasible && deadlines) plant = draw.distinct(o.n, h);
  auto anchor = [&](std::size_t i) { return plant.empty() ? draw(0, h - 1) : plant[i]; };

  switch (o.family) {
    case Family::uniform_windows:
      for (std::size_t i = 0; i < o.n; ++i) {
        Slot s = anchor(i);
        win.emplace_back(draw(0, s), draw(s, h - 1));
      }
      break;
    case Family::tight_sprinkle:
      for (std::size_t i = 0; i < o.n; ++i) {
        Slot s = anchor(i);
        win.emplace_back(s, s);
      }
      break;
    case Family::agreeable: {
      std::vector<Slot> s(o.n);
      for (std::size_t i = 0; i < o.n; ++i) s[i] = anchor(i);
      std::sort(s.begin(), s.end());
      Slot pr = 0, pd = 0;
      for (std::size_t i = 0; i < o.n; ++i) {
        Slot r = std::max(pr, s[i] - draw(0, 3));
        Slot d = std::max({pd, s[i] + draw(0, 3), r});
        d = std::min(d, std::max(h - 1, r));
        win.emplace_back(r, d);
        pr = r;
        pd = d;
      }
      break;
    }
    case Family::release_only:
      for (std::size_t i = 0; i < o.n; ++i) win.emplace_back(draw(0, h - 1), 0);
      break;
    case Family::clustered: {
      const std::size_t k = std::max<std::size_t>(1, o.n / 4);
      std::vector<Slot> centers(k);
      for (auto& c : centers) c = draw(0, h - 1);
      const Slot spread = std::max<Slot>(1, h / 16);
      for (std::size_t i = 0; i < o.n; ++i) {
        Slot s;
        if (!plant.empty()) {
          s = plant[i];
        } else {
          Slot c = centers[static_cast<std::size_t>(draw(0, static_cast<Slot>(k) - 1))];
          s = std::clamp<Slot>(c + draw(-spread, spread), 0, h - 1);
        }
        win.emplace_back(std::max<Slot>(0, s - draw(0, spread)), std::min(h - 1, s + draw(0, spread)));
      }
      break;
    }
  }

  Instance inst;
  for (std::size_t i = 0; i < win.size(); ++i) {
    Job j{"j" + std::to_string(i), win[i].first, std::nullopt, 1};
    if (deadlines) j.deadline = win[i].second;
    if (o.weighted) j.weight = draw(1, 9);
    inst.jobs.push_back(std::move(j));
  }
  return inst;
}

}  // namespace gapsched
