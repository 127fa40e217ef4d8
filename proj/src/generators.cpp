#include "projrig/generators.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace projrig {

namespace {

Rational rat(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

struct Builder {
  IncidenceStructure structure;
  std::map<std::string, HomogeneousTriple> coords;

  void add_point(const std::string& id, HomogeneousTriple t) {
    structure.points.push_back(id);
    coords.emplace(id, std::move(t));
  }
  void add_line(const std::string& id, HomogeneousTriple t) {
    structure.lines.push_back(id);
    coords.emplace(id, std::move(t));
  }
  void incidence(const std::string& p, const std::string& l) {
    structure.incidences.emplace_back(p, l);
  }
  Configuration finish() {
    return make_configuration(std::move(structure), std::move(coords));
  }
};

// Recovers a 3-regular point-line configuration from a point set: candidate
// lines are the maximal collinear subsets (3 or more points); accidental
// memberships are pruned where forced. A candidate whose members all exceed
// degree 3 is dropped whole; on a candidate with more than 3 members, the
// members of excess degree are removed (only when exactly the surplus count
// qualifies, so the reduction is unambiguous).
Configuration configuration_from_collinear_points(
    const std::vector<std::pair<std::string, HomogeneousTriple>>& points) {
  std::map<Vec3, std::set<std::size_t>> candidates;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      HomogeneousTriple l = join(points[i].second, points[j].second);
      candidates[l.coords].insert(i);
      candidates[l.coords].insert(j);
    }
  }
  for (auto it = candidates.begin(); it != candidates.end();) {
    it = it->second.size() < 3 ? candidates.erase(it) : std::next(it);
  }

  auto degree = [&candidates](std::size_t p) {
    std::size_t d = 0;
    for (const auto& [_, members] : candidates) d += members.count(p);
    return d;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = candidates.begin(); it != candidates.end(); ++it) {
      auto& members = it->second;
      if (members.size() == 3 &&
          std::all_of(members.begin(), members.end(),
                      [&](std::size_t p) { return degree(p) >= 4; })) {
        candidates.erase(it);
        changed = true;
        break;
      }
      if (members.size() > 3) {
        std::vector<std::size_t> over;
        for (std::size_t p : members) {
          if (degree(p) >= 4) over.push_back(p);
        }
        if (over.size() != members.size() - 3) {
          throw ValidationError("ambiguous accidental collinearity in point set");
        }
        for (std::size_t p : over) members.erase(p);
        changed = true;
        break;
      }
    }
  }
  for (std::size_t p = 0; p < points.size(); ++p) {
    if (degree(p) != 3) {
      throw ValidationError("point set is not 3-regular after pruning");
    }
  }

  Builder b;
  for (const auto& [id, t] : points) b.add_point(id, t);
  std::size_t n = 0;
  for (const auto& [lineCoords, members] : candidates) {
    std::string id = "l" + std::to_string(++n);
    b.add_line(id, HomogeneousTriple(lineCoords[0], lineCoords[1], lineCoords[2],
                                     EntityKind::Line));
    for (std::size_t p : members) b.incidence(points[p].first, id);
  }
  return b.finish();
}

}  // namespace

Configuration complete_quadrangle() {
  Builder b;
  b.add_point("a", point(rat(-1), rat(-1)));
  b.add_point("b", point(rat(1), rat(-1)));
  b.add_point("c", point(rat(1), rat(1)));
  b.add_point("d", point(rat(-1), rat(1)));
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}, {"a", "c"}, {"b", "d"}};
  for (const auto& [p, q] : pairs) {
    std::string id = p + q;
    b.add_line(id, join(b.coords.at(p), b.coords.at(q)));
    b.incidence(p, id);
    b.incidence(q, id);
  }
  return b.finish();
}

Configuration complete_quadrilateral() {
  return dualize(complete_quadrangle());
}

Configuration pappus(bool paperCoords) {
  if (paperCoords) {
    std::vector<std::pair<std::string, HomogeneousTriple>> pts = {
        {"b1", point(rat(-4), rat(-1))}, {"b2", point(rat(0), rat(-1))},
        {"b3", point(rat(4), rat(-1))},  {"m1", point(rat(-2), rat(1))},
        {"m2", point(rat(0), rat(1))},   {"m3", point(rat(2), rat(1))},
        {"t1", point(rat(-4), rat(3))},  {"t2", point(rat(0), rat(3))},
        {"t3", point(rat(4), rat(3))}};
    return configuration_from_collinear_points(pts);
  }
  Builder b;
  b.add_point("a1", point(rat(-3), rat(-1)));
  b.add_point("a2", point(rat(1), rat(-1)));
  b.add_point("a3", point(rat(4), rat(-1)));
  b.add_point("b1", point(rat(-2), rat(3)));
  b.add_point("b2", point(rat(0), rat(3)));
  b.add_point("b3", point(rat(5), rat(3)));
  auto J = [&b](const std::string& p, const std::string& q) {
    return join(b.coords.at(p), b.coords.at(q));
  };
  HomogeneousTriple c12 = J("a1", "b2"), c21 = J("a2", "b1");
  HomogeneousTriple c13 = J("a1", "b3"), c31 = J("a3", "b1");
  HomogeneousTriple c23 = J("a2", "b3"), c32 = J("a3", "b2");
  b.add_point("g1", meet(c23, c32));
  b.add_point("g2", meet(c13, c31));
  b.add_point("g3", meet(c12, c21));
  b.add_line("l1", J("a1", "a2"));
  b.add_line("l2", J("b1", "b2"));
  b.add_line("c12", c12);
  b.add_line("c21", c21);
  b.add_line("c13", c13);
  b.add_line("c31", c31);
  b.add_line("c23", c23);
  b.add_line("c32", c32);
  b.add_line("pl", J("g1", "g2"));
  for (const char* inc : {"a1 l1", "a2 l1", "a3 l1", "b1 l2", "b2 l2", "b3 l2",
                          "a1 c12", "b2 c12", "g3 c12", "a2 c21", "b1 c21", "g3 c21",
                          "a1 c13", "b3 c13", "g2 c13", "a3 c31", "b1 c31", "g2 c31",
                          "a2 c23", "b3 c23", "g1 c23", "a3 c32", "b2 c32", "g1 c32",
                          "g1 pl", "g2 pl", "g3 pl"}) {
    std::string s(inc);
    auto space = s.find(' ');
    b.incidence(s.substr(0, space), s.substr(space + 1));
  }
  return b.finish();
}

Configuration desargues(bool paperCoords) {
  if (paperCoords) {
    std::vector<std::pair<std::string, HomogeneousTriple>> pts = {
        {"p0", point(rat(-3), rat(0))}, {"p1", point(rat(3), rat(0))},
        {"p2", point(rat(-3), rat(3))}, {"p3", point(rat(3), rat(3))},
        {"p4", point(rat(-3), rat(6))}, {"p5", point(rat(3), rat(6))},
        {"p6", point(rat(-1), rat(4))}, {"p7", point(rat(1), rat(4))},
        {"p8", point(rat(0), rat(3))},  {"p9", point(rat(0), rat(6))}};
    return configuration_from_collinear_points(pts);
  }
  Builder b;
  b.add_point("o", point(rat(-2), rat(-1)));
  b.add_point("a", point(rat(0), rat(2)));
  b.add_point("b", point(rat(3), rat(1)));
  b.add_point("c", point(rat(1), rat(4)));
  auto onRay = [](const HomogeneousTriple& o, const HomogeneousTriple& p, Rational lam) {
    auto [ox, oy] = o.affine();
    auto [px, py] = p.affine();
    return point(ox + lam * (px - ox), oy + lam * (py - oy));
  };
  b.add_point("a2", onRay(b.coords.at("o"), b.coords.at("a"), rat(2)));
  b.add_point("b2", onRay(b.coords.at("o"), b.coords.at("b"), rat(3)));
  b.add_point("c2", onRay(b.coords.at("o"), b.coords.at("c"), rat(1, 2)));
  auto J = [&b](const std::string& p, const std::string& q) {
    return join(b.coords.at(p), b.coords.at(q));
  };
  HomogeneousTriple ab = J("a", "b"), a2b2 = J("a2", "b2");
  HomogeneousTriple bc = J("b", "c"), b2c2 = J("b2", "c2");
  HomogeneousTriple ca = J("c", "a"), c2a2 = J("c2", "a2");
  b.add_point("dm", meet(ab, a2b2));
  b.add_point("em", meet(bc, b2c2));
  b.add_point("fm", meet(ca, c2a2));
  b.add_line("ra", J("o", "a"));
  b.add_line("rb", J("o", "b"));
  b.add_line("rc", J("o", "c"));
  b.add_line("ab", ab);
  b.add_line("bc", bc);
  b.add_line("ca", ca);
  b.add_line("a2b2", a2b2);
  b.add_line("b2c2", b2c2);
  b.add_line("c2a2", c2a2);
  b.add_line("axis", J("dm", "em"));
  for (const char* inc : {"o ra", "a ra", "a2 ra", "o rb", "b rb", "b2 rb",
                          "o rc", "c rc", "c2 rc",
                          "a ab", "b ab", "dm ab", "a2 a2b2", "b2 a2b2", "dm a2b2",
                          "b bc", "c bc", "em bc", "b2 b2c2", "c2 b2c2", "em b2c2",
                          "c ca", "a ca", "fm ca", "c2 c2a2", "a2 c2a2", "fm c2a2",
                          "dm axis", "em axis", "fm axis"}) {
    std::string s(inc);
    auto space = s.find(' ');
    b.incidence(s.substr(0, space), s.substr(space + 1));
  }
  return b.finish();
}

Configuration pascal97() {
  Builder b;
  b.add_point("a", point(rat(-3), rat(1)));
  b.add_point("b", point(rat(1), rat(1)));
  b.add_point("c", point(rat(4), rat(1)));
  b.add_line("base", line(rat(0), rat(1), rat(-1)));
  b.add_line("la1", line(rat(1), rat(-1), rat(4)));
  b.add_line("la2", line(rat(2), rat(1), rat(5)));
  b.add_line("lb1", line(rat(3), rat(-1), rat(-2)));
  b.add_line("lb2", line(rat(1), rat(1), rat(-2)));
  b.add_line("lc1", line(rat(2), rat(-1), rat(-7)));
  b.add_line("lc2", line(rat(3), rat(1), rat(-13)));
  auto M = [&b](const std::string& l, const std::string& m) {
    return meet(b.coords.at(l), b.coords.at(m));
  };
  b.add_point("m1", M("la1", "lb2"));
  b.add_point("m2", M("lb2", "lc1"));
  b.add_point("m3", M("lc1", "la2"));
  b.add_point("m4", M("la2", "lb1"));
  b.add_point("m5", M("lb1", "lc2"));
  b.add_point("m6", M("lc2", "la1"));
  for (const char* inc : {"a base", "b base", "c base",
                          "a la1", "a la2", "b lb1", "b lb2", "c lc1", "c lc2",
                          "m1 la1", "m1 lb2", "m2 lb2", "m2 lc1", "m3 lc1", "m3 la2",
                          "m4 la2", "m4 lb1", "m5 lb1", "m5 lc2", "m6 lc2", "m6 la1"}) {
    std::string s(inc);
    auto space = s.find(' ');
    b.incidence(s.substr(0, space), s.substr(space + 1));
  }
  return b.finish();
}

Configuration zero_extension_add_line(const Configuration& config, const std::string& pointA,
                                      const std::string& pointB, const std::string& newLineId) {
  if (pointA == pointB) {
    throw ValidationError("extension needs two distinct points");
  }
  HomogeneousTriple l = join(config.point_at(pointA), config.point_at(pointB));
  for (const auto& id : config.structure.lines) {
    if (config.line_at(id).coords == l.coords) {
      throw ValidationError("join of " + pointA + " and " + pointB +
                            " already present as line '" + id + "'");
    }
  }
  std::string id = newLineId.empty() ? pointA + "~" + pointB : newLineId;
  if (config.coords.count(id)) {
    throw ValidationError("id '" + id + "' already in use");
  }
  Configuration extended = config;
  extended.structure.lines.push_back(id);
  extended.coords.emplace(id, l);
  extended.structure.incidences.emplace_back(pointA, id);
  extended.structure.incidences.emplace_back(pointB, id);
  return extended;
}

Configuration zero_extension_add_point(const Configuration& config, const std::string& lineA,
                                       const std::string& lineB, const std::string& newPointId) {
  if (lineA == lineB) {
    throw ValidationError("extension needs two distinct lines");
  }
  HomogeneousTriple p = meet(config.line_at(lineA), config.line_at(lineB));
  for (const auto& id : config.structure.points) {
    if (config.point_at(id).coords == p.coords) {
      throw ValidationError("meet of " + lineA + " and " + lineB +
                            " already present as point '" + id + "'");
    }
  }
  std::string id = newPointId.empty() ? lineA + "~" + lineB : newPointId;
  if (config.coords.count(id)) {
    throw ValidationError("id '" + id + "' already in use");
  }
  Configuration extended = config;
  extended.structure.points.push_back(id);
  extended.coords.emplace(id, p);
  extended.structure.incidences.emplace_back(id, lineA);
  extended.structure.incidences.emplace_back(id, lineB);
  return extended;
}

std::uint32_t max_grid_level() {
  if (const char* env = std::getenv("PROJRIG_MAX_GRID_LEVEL")) {
    char* end = nullptr;
    unsigned long parsed = std::strtoul(env, &end, 10);
    if (end && *end == '\0') {
      return static_cast<std::uint32_t>(parsed);
    }
  }
  return 6;
}

Configuration dyadic_grid(std::uint32_t level) {
  if (level > max_grid_level()) {
    throw ValidationError("grid level " + std::to_string(level) + " exceeds the cap of " +
                          std::to_string(max_grid_level()));
  }
  Builder b;
  b.add_point("a", point(rat(0), rat(0)));
  b.add_point("b", point(rat(0), rat(1)));
  b.add_point("c", point(rat(1), rat(1)));
  b.add_point("d", point(rat(1), rat(0)));
  b.add_point("p1", HomogeneousTriple(rat(1), rat(0), rat(0), EntityKind::Point));
  b.add_point("p2", HomogeneousTriple(rat(0), rat(1), rat(0), EntityKind::Point));
  b.add_point("p3", HomogeneousTriple(rat(1), rat(1), rat(0), EntityKind::Point));
  b.add_point("p4", HomogeneousTriple(rat(1), rat(-1), rat(0), EntityKind::Point));
  b.add_line("ab", line(rat(1), rat(0), rat(0)));
  b.add_line("bc", line(rat(0), rat(1), rat(-1)));
  b.add_line("cd", line(rat(1), rat(0), rat(-1)));
  b.add_line("da", line(rat(0), rat(1), rat(0)));
  b.add_line("ac", line(rat(1), rat(-1), rat(0)));
  b.add_line("bd", line(rat(1), rat(1), rat(-1)));
  b.add_line("linf", line(rat(0), rat(0), rat(1)));
  b.add_line("ap4", line(rat(1), rat(1), rat(0)));
  b.add_line("bp3", line(rat(1), rat(-1), rat(1)));
  b.add_line("cp4", line(rat(1), rat(1), rat(-2)));
  b.add_line("dp3", line(rat(1), rat(-1), rat(-1)));

  auto frac = [](const Rational& r) { return rational_to_string(r); };
  // Level N contributes: for N >= 1 the boundary points at odd multiples of
  // 1/2^N with their four diagonal joins, then for every level the
  // horizontals and verticals at odd multiples of 1/2^(N+1), each reaching
  // its ideal point via an anchor outside the unit square. The level-0
  // instance is the e/f pair of the base figure.
  for (std::uint32_t n = 0; n <= level; ++n) {
    if (n >= 1) {
      mpz_class denom = mpz_class(1) << n;
      for (mpz_class k = 1; k < denom; k += 2) {
        Rational h(k, denom);
        h.canonicalize();
        b.add_point("ab@" + frac(h), point(rat(0), h));
        b.add_point("cd@" + frac(h), point(rat(1), h));
      }
      for (mpz_class k = 1; k < denom; k += 2) {
        Rational h(k, denom);
        h.canonicalize();
        Rational hm1 = h - 1;
        Rational negH = -h;
        Rational negHm1 = -h - 1;
        b.add_line("p3(ab@" + frac(h) + ")", line(rat(1), rat(-1), h));
        b.add_line("p4(ab@" + frac(h) + ")", line(rat(1), rat(1), negH));
        b.add_line("p3(cd@" + frac(h) + ")", line(rat(1), rat(-1), hm1));
        b.add_line("p4(cd@" + frac(h) + ")", line(rat(1), rat(1), negHm1));
      }
    }
    mpz_class denomFine = mpz_class(1) << (n + 1);
    for (mpz_class j = 1; j < denomFine; j += 2) {
      Rational v(j, denomFine);
      v.canonicalize();
      Rational half = rat(1, 2);
      Rational negV = -v;
      Rational vm1 = v - 1;
      Rational vp1 = v + 1;
      Rational twoMinusV = 2 - v;
      HomogeneousTriple anchorH =
          v <= half ? point(negV, v) : point(vm1, v);
      HomogeneousTriple anchorV =
          v <= half ? point(v, vp1) : point(v, twoMinusV);
      std::string ha = n == 0 ? "e" : "anchor(h@" + frac(v) + ")";
      std::string va = n == 0 ? "f" : "anchor(v@" + frac(v) + ")";
      std::string hl = n == 0 ? "ep1" : "h@" + frac(v);
      std::string vl = n == 0 ? "fp2" : "v@" + frac(v);
      b.add_point(ha, anchorH);
      b.add_point(va, anchorV);
      b.add_line(hl, line(rat(0), rat(1), negV));
      b.add_line(vl, line(rat(1), rat(0), negV));
    }
  }

  Configuration grid{std::move(b.structure), std::move(b.coords)};
  grid.structure.incidences = detect_geometric_incidences(grid);
  grid.validate();
  return grid;
}

ConicMode conic_mode_from_string(const std::string& name) {
  if (name == "tangent") return ConicMode::Tangent;
  if (name == "secant") return ConicMode::Secant;
  if (name == "miss") return ConicMode::Miss;
  throw ValidationError("unknown conic mode '" + name + "'");
}

std::string to_string(ConicMode mode) {
  switch (mode) {
    case ConicMode::Tangent: return "tangent";
    case ConicMode::Secant: return "secant";
    case ConicMode::Miss: return "miss";
  }
  return {};
}

namespace {

// Shared linkage skeleton. Either f is given (tangent/secant: f on the
// conic, the slider t follows) or t is given (miss: f follows). Declares
// the (f, ox) incidence only when withFinal.
Configuration build_mechanism(const HomogeneousTriple& ox, const HomogeneousTriple& o,
                              const HomogeneousTriple& xpt,
                              const std::optional<HomogeneousTriple>& fGiven,
                              const std::optional<HomogeneousTriple>& tGiven, bool withFinal) {
  Builder bld;
  HomogeneousTriple a = point(rat(1), rat(1));
  HomogeneousTriple bb = point(rat(2), rat(1, 2));
  HomogeneousTriple c = point(rat(3), rat(1, 3));
  HomogeneousTriple d = point(rat(-1), rat(-1));
  HomogeneousTriple e = point(rat(-4), rat(-1, 4));

  auto [ox_, oy_] = o.affine();
  Rational negOx = -ox_;
  Rational yUp = oy_ + 4;
  HomogeneousTriple oy = line(rat(1), rat(0), negOx);
  HomogeneousTriple ypt = point(ox_, yUp);

  HomogeneousTriple ab = join(a, bb), de = join(d, e), bc = join(bb, c), cd = join(c, d);
  HomogeneousTriple j = meet(ab, de);

  HomogeneousTriple f, t, i, k, jt, ai, ek;
  if (fGiven) {
    f = *fGiven;
    ek = join(e, f);
    k = meet(bc, ek);
    ai = join(f, a);
    i = meet(cd, ai);
    jt = join(j, k);
    t = meet(jt, oy);
  } else {
    t = *tGiven;
    jt = join(j, t);
    k = meet(bc, jt);
    i = meet(cd, jt);
    ai = join(a, i);
    ek = join(e, k);
    f = meet(ai, ek);
  }

  bld.add_point("o", o);
  bld.add_point("x", xpt);
  bld.add_point("y", ypt);
  bld.add_point("t", t);
  bld.add_point("a", a);
  bld.add_point("b", bb);
  bld.add_point("c", c);
  bld.add_point("d", d);
  bld.add_point("e", e);
  bld.add_point("j", j);
  bld.add_point("i", i);
  bld.add_point("k", k);
  bld.add_point("f", f);
  bld.add_line("ox", ox);
  bld.add_line("oy", oy);
  bld.add_line("ab", ab);
  bld.add_line("de", de);
  bld.add_line("bc", bc);
  bld.add_line("cd", cd);
  bld.add_line("jt", jt);
  bld.add_line("ai", ai);
  bld.add_line("ek", ek);
  for (const char* inc : {"o ox", "o oy", "x ox", "y oy", "t oy", "t jt",
                          "a ab", "b ab", "j ab", "d de", "e de", "j de",
                          "b bc", "c bc", "k bc", "c cd", "d cd", "i cd",
                          "j jt", "i jt", "k jt", "a ai", "i ai", "f ai",
                          "e ek", "k ek", "f ek"}) {
    std::string s(inc);
    auto space = s.find(' ');
    bld.incidence(s.substr(0, space), s.substr(space + 1));
  }
  if (withFinal) {
    bld.incidence("f", "ox");
  }
  return bld.finish();
}

}  // namespace

ConicMechanism conic_mechanism(ConicMode mode) {
  ConicMechanism mech;
  mech.mode = mode;
  mech.pins.points = {"o", "x", "y", "a", "b", "c", "d", "e"};
  switch (mode) {
    case ConicMode::Tangent: {
      // Probe line tangent to xy = z^2 at (-2, -1/2).
      HomogeneousTriple ox = line(rat(1), rat(4), rat(4));
      mech.config = build_mechanism(ox, point(rat(-4), rat(0)), point(rat(4), rat(-2)),
                                    point(rat(-2), rat(-1, 2)), std::nullopt, true);
      mech.finalIncidenceRealizable = true;
      break;
    }
    case ConicMode::Secant: {
      // Probe line through (-2, -1/2) and (-8, -1/8).
      HomogeneousTriple ox = line(rat(1), rat(16), rat(10));
      HomogeneousTriple o = point(rat(-10), rat(0));
      HomogeneousTriple xpt = point(rat(6), rat(-1));
      mech.config = build_mechanism(ox, o, xpt, point(rat(-2), rat(-1, 2)), std::nullopt, true);
      mech.altConfig = build_mechanism(ox, o, xpt, point(rat(-8), rat(-1, 8)), std::nullopt, true);
      mech.finalIncidenceRealizable = true;
      break;
    }
    case ConicMode::Miss: {
      // Probe line x + y + 1 = 0 misses the conic over the reals.
      HomogeneousTriple ox = line(rat(1), rat(1), rat(1));
      mech.config = build_mechanism(ox, point(rat(-2), rat(1)), point(rat(1), rat(-2)),
                                    std::nullopt, point(rat(-2), rat(3)), false);
      mech.finalIncidenceRealizable = false;
      break;
    }
  }
  return mech;
}

Configuration random_configuration(std::uint64_t seed, std::size_t nPoints, std::size_t nLines,
                                   std::size_t targetIncidences) {
  if (targetIncidences % 2 != 0) {
    throw ValidationError("incidence target must be even (extensions add two at a time)");
  }
  // Every extension (a join through two points or a meet of two lines)
  // contributes exactly two incidences; the remaining entities are free.
  std::size_t extensions = targetIncidences / 2;
  if (extensions > nPoints + nLines) {
    throw ValidationError("incidence target unreachable for the requested entity counts");
  }
  std::size_t freeSlots = nPoints + nLines - extensions;

  // One attempt with a fixed split of the free budget between points and
  // lines; returns nothing when the growth dead-ends (for example when every
  // candidate join already exists).
  auto attempt = [&](std::size_t freeP, std::uint64_t attemptSeed) -> std::optional<Configuration> {
    std::size_t freeL = freeSlots - freeP;
    std::size_t extP = nPoints - freeP, extL = nLines - freeL;
    std::mt19937_64 engine(attemptSeed);
    auto pick = [&engine](std::size_t bound) {
      return static_cast<std::size_t>(engine() % bound);
    };
    auto smallRational = [&engine]() {
      long num = static_cast<long>(engine() % 25) - 12;
      long den = 1 + static_cast<long>(engine() % 3);
      return rat(num, den);
    };

    Builder b;
    std::size_t madeP = 0, madeL = 0;
    auto tripleExists = [&b](const Vec3& v, EntityKind kind) {
      for (const auto& [id, t] : b.coords) {
        if (t.kind == kind && t.coords == v) return true;
      }
      return false;
    };
    for (std::size_t i = 0; i < freeP; ++i) {
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        HomogeneousTriple p = point(smallRational(), smallRational());
        if (tripleExists(p.coords, EntityKind::Point)) continue;
        b.add_point("P" + std::to_string(++madeP), p);
        placed = true;
      }
      if (!placed) return std::nullopt;
    }
    for (std::size_t i = 0; i < freeL; ++i) {
      bool placed = false;
      for (int tries = 0; tries < 200 && !placed; ++tries) {
        HomogeneousTriple l = line(smallRational(), smallRational(), rat(1));
        if (tripleExists(l.coords, EntityKind::Line)) continue;
        b.add_line("L" + std::to_string(++madeL), l);
        placed = true;
      }
      if (!placed) return std::nullopt;
    }

    auto tryExtendLine = [&]() {
      const auto& pts = b.structure.points;
      if (pts.size() < 2) return false;
      for (int tries = 0; tries < 400; ++tries) {
        const std::string& p = pts[pick(pts.size())];
        const std::string& q = pts[pick(pts.size())];
        if (p == q) continue;
        HomogeneousTriple l = join(b.coords.at(p), b.coords.at(q));
        if (!l.chart_valid() || tripleExists(l.coords, EntityKind::Line)) continue;
        std::string id = "L" + std::to_string(++madeL);
        b.add_line(id, l);
        b.incidence(p, id);
        b.incidence(q, id);
        return true;
      }
      return false;
    };
    auto tryExtendPoint = [&]() {
      const auto& lns = b.structure.lines;
      if (lns.size() < 2) return false;
      for (int tries = 0; tries < 400; ++tries) {
        const std::string& l = lns[pick(lns.size())];
        const std::string& m = lns[pick(lns.size())];
        if (l == m) continue;
        HomogeneousTriple p = meet(b.coords.at(l), b.coords.at(m));
        if (!p.chart_valid() || tripleExists(p.coords, EntityKind::Point)) continue;
        std::string id = "P" + std::to_string(++madeP);
        b.add_point(id, p);
        b.incidence(id, l);
        b.incidence(id, m);
        return true;
      }
      return false;
    };

    while (extP > 0 || extL > 0) {
      // Work on the larger remaining batch first so neither kind starves.
      bool done = false;
      if (extL >= extP) {
        if (extL > 0 && tryExtendLine()) {
          --extL;
          done = true;
        } else if (extP > 0 && tryExtendPoint()) {
          --extP;
          done = true;
        }
      } else {
        if (extP > 0 && tryExtendPoint()) {
          --extP;
          done = true;
        } else if (extL > 0 && tryExtendLine()) {
          --extL;
          done = true;
        }
      }
      if (!done) return std::nullopt;
    }
    return b.finish();
  };

  // Feasibility depends on how the free budget is split, so walk every
  // split deterministically: join-heavy requests want many free points, so
  // start from the point-rich end, and vice versa.
  std::size_t fpLow = freeSlots > nLines ? freeSlots - nLines : 0;
  std::size_t fpHigh = std::min(nPoints, freeSlots);
  std::vector<std::size_t> order;
  if (nLines >= nPoints) {
    for (std::size_t fp = fpHigh; fp + 1 > fpLow; --fp) order.push_back(fp);
  } else {
    for (std::size_t fp = fpLow; fp <= fpHigh; ++fp) order.push_back(fp);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (auto config = attempt(order[i], seed + 0x9e3779b97f4a7c15ULL * i)) {
      return *config;
    }
  }
  throw ValidationError("incidence target unreachable for the requested entity counts");
}

}  // namespace projrig
