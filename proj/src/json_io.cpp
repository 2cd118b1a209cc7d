#include "unchained/json_io.hpp"

#include <fstream>
#include <sstream>

namespace unchained::io {

namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
  return *it;
}

} // namespace

json signature_to_json(const Signature& sig) {
  if (sig.is_powerset()) return json{{"kind", "powerset"}};
  json ops = json::array();
  for (const OpSym& op : sig.ops()) ops.push_back(json{{"name", op.name}, {"arity", op.arity}});
  return json{{"ops", std::move(ops)}};
}

Signature signature_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("functor must be an object");
  if (j.contains("kind")) {
    if (j["kind"] != "powerset") throw ParseError("unknown functor kind");
    return Signature::powerset();
  }
  std::vector<OpSym> ops;
  for (const json& o : require(j, "ops")) {
    if (!o.is_object()) throw ParseError("operation must be an object");
    ops.push_back(OpSym{require(o, "name").get<std::string>(), require(o, "arity").get<int>()});
  }
  return Signature::polynomial(std::move(ops));
}

json coalgebra_to_json(const Coalgebra& c) {
  json structure = json::object();
  for (int v = 0; v < c.carrier.size(); ++v) {
    const FElem& e = c.structure[static_cast<std::size_t>(v)];
    if (e.op == FElem::kSubset) {
      json members = json::array();
      for (int a : e.args) members.push_back(c.carrier.name(a));
      structure[c.carrier.name(v)] = json{{"set", std::move(members)}};
    } else {
      json args = json::array();
      for (int a : e.args) args.push_back(c.carrier.name(a));
      structure[c.carrier.name(v)] =
          json{{"op", c.sig.op(e.op).name}, {"args", std::move(args)}};
    }
  }
  return json{{"functor", signature_to_json(c.sig)},
              {"carrier", c.carrier.names()},
              {"structure", std::move(structure)}};
}

Coalgebra coalgebra_from_json(const json& j) {
  Signature sig = signature_from_json(require(j, "functor"));
  std::vector<std::string> names;
  for (const json& n : require(j, "carrier")) names.push_back(n.get<std::string>());
  FinSet carrier = FinSet::from_names(std::move(names));

  const json& st = require(j, "structure");
  if (!st.is_object()) throw ParseError("structure must be an object");
  std::vector<FElem> structure(static_cast<std::size_t>(carrier.size()));
  std::vector<char> seen(static_cast<std::size_t>(carrier.size()), 0);
  for (auto it = st.begin(); it != st.end(); ++it) {
    auto idx = carrier.find(it.key());
    if (!idx) throw ParseError("structure key not in carrier: " + it.key());
    seen[static_cast<std::size_t>(*idx)] = 1;
    const json& val = it.value();
    FElem e;
    if (val.contains("set")) {
      if (!sig.is_powerset()) throw ParseError("subset value over a polynomial functor");
      e.op = FElem::kSubset;
      for (const json& m : val["set"]) e.args.push_back(carrier.index_of(m.get<std::string>()));
    } else {
      if (sig.is_powerset()) throw ParseError("operation value over the powerset functor");
      e.op = sig.op_index(require(val, "op").get<std::string>());
      for (const json& a : require(val, "args"))
        e.args.push_back(carrier.index_of(a.get<std::string>()));
    }
    structure[static_cast<std::size_t>(*idx)] = std::move(e);
  }
  for (int v = 0; v < carrier.size(); ++v)
    if (!seen[static_cast<std::size_t>(v)])
      throw ParseError("structure missing for element " + carrier.name(v));
  return make_coalgebra(std::move(sig), std::move(carrier), std::move(structure));
}

json algebra_to_json(const Algebra& a) {
  json structure = json::object();
  for (int i = 0; i < a.fcarrier.carrier().size(); ++i)
    structure[a.fcarrier.carrier().name(i)] =
        a.carrier.name(a.structure[static_cast<std::size_t>(i)]);
  return json{{"functor", signature_to_json(a.sig)},
              {"carrier", a.carrier.names()},
              {"structure", std::move(structure)}};
}

Algebra algebra_from_json(const json& j, std::uint64_t cap) {
  Signature sig = signature_from_json(require(j, "functor"));
  std::vector<std::string> names;
  for (const json& n : require(j, "carrier")) names.push_back(n.get<std::string>());
  FinSet carrier = FinSet::from_names(std::move(names));
  FObj f = apply_obj(sig, carrier, cap);

  const json& st = require(j, "structure");
  std::vector<int> table(static_cast<std::size_t>(f.carrier().size()), -1);
  for (auto it = st.begin(); it != st.end(); ++it) {
    auto idx = f.carrier().find(it.key());
    if (!idx) throw ParseError("unknown encoded element: " + it.key());
    table[static_cast<std::size_t>(*idx)] = carrier.index_of(it.value().get<std::string>());
  }
  for (int i = 0; i < f.carrier().size(); ++i)
    if (table[static_cast<std::size_t>(i)] == -1)
      throw ParseError("algebra structure missing for " + f.carrier().name(i));
  return Algebra{std::move(sig), std::move(carrier), std::move(f), std::move(table)};
}

json finfn_to_json(const FinFn& f) {
  json map = json::object();
  for (int i = 0; i < f.dom().size(); ++i) map[f.dom().name(i)] = f.cod().name(f(i));
  return map;
}

json diagram_to_json(const Diagram& d) {
  json nodes = json::object();
  for (const auto& [id, s] : d.nodes) nodes[id] = s.names();
  json edges = json::array();
  for (const auto& e : d.edges)
    edges.push_back(json{
        {"id", e.id}, {"src", e.src}, {"dst", e.dst}, {"map", finfn_to_json(e.fn)}});
  return json{{"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

Diagram diagram_from_json(const json& j) {
  Diagram d;
  const json& nodes = require(j, "nodes");
  if (!nodes.is_object()) throw ParseError("nodes must be an object");
  for (auto it = nodes.begin(); it != nodes.end(); ++it) {
    std::vector<std::string> names;
    for (const json& n : it.value()) names.push_back(n.get<std::string>());
    d.nodes.emplace(it.key(), FinSet::from_names(std::move(names)));
  }
  if (j.contains("edges")) {
    for (const json& e : j["edges"]) {
      std::string id = require(e, "id").get<std::string>();
      std::string src = require(e, "src").get<std::string>();
      std::string dst = require(e, "dst").get<std::string>();
      auto si = d.nodes.find(src);
      auto di = d.nodes.find(dst);
      if (si == d.nodes.end() || di == d.nodes.end())
        throw ParseError("edge endpoint not a node in edge " + id);
      std::vector<std::pair<std::string, std::string>> pairs;
      for (auto it = require(e, "map").begin(); it != require(e, "map").end(); ++it)
        pairs.emplace_back(it.key(), it.value().get<std::string>());
      d.edges.push_back(
          Diagram::Edge{id, src, dst, FinFn::from_pairs(si->second, di->second, pairs)});
    }
  }
  d.validate();
  return d;
}

json parse_document(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

} // namespace

std::string coalgebra_to_dot(const Coalgebra& c) {
  std::ostringstream os;
  os << "// format: " << kFormatTag << "\n";
  os << "digraph successors {\n  rankdir=LR;\n";
  for (int v = 0; v < c.carrier.size(); ++v) {
    const FElem& e = c.structure[static_cast<std::size_t>(v)];
    os << "  \"" << dot_escape(c.carrier.name(v)) << "\" [label=\""
       << dot_escape(c.carrier.name(v)) << " : " << dot_escape(felem_name(c.sig, c.carrier, e))
       << "\"];\n";
  }
  for (int v = 0; v < c.carrier.size(); ++v) {
    auto args = c.structure[static_cast<std::size_t>(v)].args;
    std::sort(args.begin(), args.end());
    args.erase(std::unique(args.begin(), args.end()), args.end());
    for (int a : args)
      os << "  \"" << dot_escape(c.carrier.name(v)) << "\" -> \""
         << dot_escape(c.carrier.name(a)) << "\";\n";
  }
  os << "}\n";
  return os.str();
}

std::string colimit_to_dot(const Diagram& d, const ColimitData& cd) {
  std::ostringstream os;
  os << "// format: " << kFormatTag << "\n";
  os << "digraph colimit {\n  compound=true;\n";
  // one cluster per quotient class of the coproduct
  std::vector<int> reps = cd.partition.classes.representatives();
  for (std::size_t ci = 0; ci < reps.size(); ++ci) {
    os << "  subgraph cluster_" << ci << " {\n    label=\""
       << dot_escape(cd.coproduct.name(reps[ci])) << "\";\n";
    for (int i = 0; i < cd.coproduct.size(); ++i)
      if (cd.partition.classes.find(i) == reps[ci])
        os << "    \"" << dot_escape(cd.coproduct.name(i)) << "\";\n";
    os << "  }\n";
  }
  for (const auto& e : d.edges) {
    const FinSet& src = d.nodes.at(e.src);
    for (int v = 0; v < src.size(); ++v)
      os << "  \"" << dot_escape(e.src + ":" + src.name(v)) << "\" -> \""
         << dot_escape(e.dst + ":" + e.fn.cod().name(e.fn(v))) << "\" [label=\""
         << dot_escape(e.id) << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace unchained::io
