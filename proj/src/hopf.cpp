#include "feynmot/hopf.hpp"

#include "feynmot/errors.hpp"

#include <algorithm>

namespace feynmot {

GraphMonomial multiply(const GraphMonomial& a, const GraphMonomial& b) {
  GraphMonomial m;
  m.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  return m;
}

void add_to(HopfElement& x, const GraphMonomial& m, const BigInt& c) {
  if (c == 0) return;
  auto& slot = x[m];
  slot += c;
  if (slot == 0) x.erase(m);
}

HopfElement multiply(const HopfElement& a, const HopfElement& b) {
  HopfElement r;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) add_to(r, multiply(ma, mb), ca * cb);
  return r;
}

HopfElement unit_element() { return {{GraphMonomial{}, BigInt(1)}}; }

BigInt counit(const HopfElement& x) {
  auto it = x.find(GraphMonomial{});
  return it == x.end() ? BigInt(0) : it->second;
}

namespace {

template <class Key>
void add_tensor(std::map<Key, BigInt>& t, const Key& k, const BigInt& c) {
  if (c == 0) return;
  auto& slot = t[k];
  slot += c;
  if (slot == 0) t.erase(k);
}

HopfTensor tensor_product(const HopfTensor& a, const HopfTensor& b) {
  HopfTensor r;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b)
      add_tensor(r, {multiply(ka.first, kb.first), multiply(ka.second, kb.second)}, ca * cb);
  return r;
}

}  // namespace

HopfAlgebra::HopfAlgebra(Theory theory, Grading grading) : theory_(std::move(theory)), grading_(grading) {
  theory_.validate();
}

std::size_t HopfAlgebra::intern(const Graph& g) {
  if (!g.is_connected() || g.num_vertices() == 0) throw ValidationError("Hopf generator must be a connected graph");
  if (!is_1pi(g)) throw ValidationError("Hopf generator must be 1PI");
  if (loop_number(g) == 0) throw ValidationError("Hopf generator must have a loop");
  g.validate(theory_);
  std::string key = canonical_key(g);
  auto it = ids_.find(key);
  if (it != ids_.end()) return it->second;
  graphs_.push_back(canonical_form(g));
  ids_.emplace(std::move(key), graphs_.size() - 1);
  return graphs_.size() - 1;
}

std::size_t HopfAlgebra::degree(std::size_t id) const {
  const Graph& g = graph(id);
  return grading_ == Grading::LoopNumber ? loop_number(g) : g.num_edges();
}

std::size_t HopfAlgebra::degree(const GraphMonomial& m) const {
  std::size_t d = 0;
  for (auto id : m) d += degree(id);
  return d;
}

const HopfTensor& HopfAlgebra::coproduct(std::size_t id) {
  if (auto it = coproducts_.find(id); it != coproducts_.end()) return it->second;
  const Graph g = graph(id);
  HopfTensor t;
  add_tensor(t, {GraphMonomial{id}, GraphMonomial{}}, BigInt(1));
  add_tensor(t, {GraphMonomial{}, GraphMonomial{id}}, BigInt(1));
  for (const Subgraph& sub : subdivergences(g, theory_)) {
    GraphMonomial left;
    for (const auto& comp : subgraph_components(g, sub)) left = multiply(left, {intern(extract_component(g, comp))});
    add_tensor(t, {left, GraphMonomial{intern(quotient(g, sub))}}, BigInt(1));
  }
  return coproducts_.emplace(id, std::move(t)).first->second;
}

HopfTensor HopfAlgebra::coproduct(const GraphMonomial& m) {
  HopfTensor r;
  add_tensor(r, {GraphMonomial{}, GraphMonomial{}}, BigInt(1));
  for (auto id : m) r = tensor_product(r, coproduct(id));
  return r;
}

HopfTensor HopfAlgebra::coproduct(const HopfElement& x) {
  HopfTensor r;
  for (const auto& [m, c] : x)
    for (const auto& [k, v] : coproduct(m)) add_tensor(r, k, c * v);
  return r;
}

HopfTensor HopfAlgebra::reduced_coproduct(const GraphMonomial& m) {
  HopfTensor r = coproduct(m);
  if (m.empty()) return {};
  r.erase({m, GraphMonomial{}});
  r.erase({GraphMonomial{}, m});
  return r;
}

const HopfElement& HopfAlgebra::antipode(const GraphMonomial& m) {
  if (auto it = antipodes_.find(m); it != antipodes_.end()) return it->second;
  HopfElement s;
  if (m.empty()) {
    s = unit_element();
  } else {
    add_to(s, m, BigInt(-1));
    for (const auto& [k, c] : reduced_coproduct(m)) {
      HopfElement left = antipode(k.first);
      for (const auto& [lm, lc] : left) add_to(s, multiply(lm, k.second), -c * lc);
    }
  }
  return antipodes_.emplace(m, std::move(s)).first->second;
}

HopfElement HopfAlgebra::antipode(const HopfElement& x) {
  HopfElement r;
  for (const auto& [m, c] : x)
    for (const auto& [sm, sc] : antipode(m)) add_to(r, sm, c * sc);
  return r;
}

HopfTensor3 HopfAlgebra::left_iterated_coproduct(const HopfElement& x) {
  HopfTensor3 r;
  for (const auto& [k, c] : coproduct(x))
    for (const auto& [k2, c2] : coproduct(k.first)) add_tensor(r, {k2.first, k2.second, k.second}, c * c2);
  return r;
}

HopfTensor3 HopfAlgebra::right_iterated_coproduct(const HopfElement& x) {
  HopfTensor3 r;
  for (const auto& [k, c] : coproduct(x))
    for (const auto& [k2, c2] : coproduct(k.second)) add_tensor(r, {k.first, k2.first, k2.second}, c * c2);
  return r;
}

HopfElement HopfAlgebra::antipode_left(const HopfElement& x) {
  HopfElement r;
  for (const auto& [k, c] : coproduct(x)) {
    HopfElement s = antipode(k.first);
    for (const auto& [sm, sc] : s) add_to(r, multiply(sm, k.second), c * sc);
  }
  return r;
}

HopfElement HopfAlgebra::antipode_right(const HopfElement& x) {
  HopfElement r;
  for (const auto& [k, c] : coproduct(x)) {
    HopfElement s = antipode(k.second);
    for (const auto& [sm, sc] : s) add_to(r, multiply(k.first, sm), c * sc);
  }
  return r;
}

std::string HopfAlgebra::to_string(const GraphMonomial& m) const {
  if (m.empty()) return "1";
  std::string out;
  for (auto id : m) {
    if (!out.empty()) out += "*";
    out += "G" + std::to_string(id);
  }
  return out;
}

std::string HopfAlgebra::to_string(const HopfElement& x) const {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : x) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    BigInt mag = c < 0 ? BigInt(-c) : c;
    if (mag != 1) out += feynmot::to_string(mag) + "*";
    out += to_string(m);
  }
  return out;
}

}  // namespace feynmot
