#include "minubench/types.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace minubench {

const char* to_string(MinutiaKind kind) {
  switch (kind) {
    case MinutiaKind::kEnding:
      return "ending";
    case MinutiaKind::kBifurcation:
      return "bifurcation";
    case MinutiaKind::kOther:
      return "other";
  }
  return "other";
}

MinutiaKind minutia_kind_from_string(const std::string& s) {
  if (s == "ending") return MinutiaKind::kEnding;
  if (s == "bifurcation") return MinutiaKind::kBifurcation;
  if (s == "other") return MinutiaKind::kOther;
  throw DataError("unknown minutia kind \"" + s + "\"");
}

std::vector<std::string> validate(const MinutiaeTemplate& t) {
  std::vector<std::string> violations;
  auto report = [&violations](int index, const std::string& rule) {
    std::ostringstream os;
    os << "minutia " << index << ": " << rule;
    violations.push_back(os.str());
  };

  if (t.width <= 0 || t.height <= 0) {
    violations.push_back("template: width and height must be positive");
  }
  if (t.count() > kMaxMinutiae) {
    std::ostringstream os;
    os << "template: minutiae count " << t.count() << " exceeds maximum "
       << kMaxMinutiae;
    violations.push_back(os.str());
  }

  std::map<std::pair<int, int>, int> seen;
  for (int i = 0; i < t.count(); ++i) {
    const Minutia& m = t.minutiae[i];
    if (m.x < 0 || m.x >= t.width) {
      report(i, "x out of bounds [0, width)");
    }
    if (m.y < 0 || m.y >= t.height) {
      report(i, "y out of bounds [0, height)");
    }
    if (!(m.theta >= 0.0 && m.theta < kTwoPi)) {
      report(i, "theta not canonical in [0, 2*pi)");
    }
    if (m.quality < 0 || m.quality > 100) {
      report(i, "quality out of range [0, 100]");
    }
    auto [it, inserted] = seen.emplace(std::make_pair(m.x, m.y), i);
    if (!inserted) {
      std::ostringstream os;
      os << "duplicate position with minutia " << it->second;
      report(i, os.str());
    }
  }
  return violations;
}

}  // namespace minubench
