/*
 * Copyright 2026 the qccdsim authors
 *
 * SPDX-License-Identifier: Apache-2.0
 */
#include "qccd/circuit_io.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qccd {

namespace {

using nlohmann::json;

std::string fmt_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

std::string pred_to_text(const Predicate& p) {
  std::ostringstream os;
  switch (p.kind) {
    case Predicate::Kind::BitEquals: {
      int bit = 0;
      std::uint64_t m = p.mask;
      while (m > 1) {
        m >>= 1;
        ++bit;
      }
      os << p.creg << "[" << bit << "]==" << p.value;
      break;
    }
    case Predicate::Kind::RegEquals:
      os << p.creg << "==" << p.value;
      break;
    case Predicate::Kind::ParityEquals: {
      // Full register, contiguous range, or general hex mask.
      if (p.mask == ~std::uint64_t{0}) {
        os << "parity(" << p.creg << ")";
      } else {
        std::uint64_t m = p.mask;
        int lo = 0;
        while (m && !(m & 1)) {
          m >>= 1;
          ++lo;
        }
        int len = 0;
        while (m & 1) {
          m >>= 1;
          ++len;
        }
        if (m == 0 && len > 0 && len < 64)
          os << "parity(" << p.creg << "[" << lo << ":" << (lo + len) << "])";
        else
          os << "parity(" << p.creg << " & 0x" << std::hex << p.mask
             << std::dec << ")";
      }
      os << "==" << p.value;
      break;
    }
  }
  return os.str();
}

void op_to_text(const Operation& op, std::ostream& os) {
  switch (op.kind) {
    case OpKind::Rot1Q:
      os << "r1q q" << op.qubits[0] << " " << fmt_double(op.euler[0]) << " "
         << fmt_double(op.euler[1]) << " " << fmt_double(op.euler[2]);
      break;
    case OpKind::UZZ:
      os << "uzz q" << op.qubits[0] << " q" << op.qubits[1] << " "
         << fmt_double(op.theta());
      break;
    case OpKind::Measure:
      os << "measure q" << op.qubits[0] << " -> " << op.creg << "["
         << op.creg_bit << "]";
      break;
    case OpKind::Reset:
      os << "reset q" << op.qubits[0];
      break;
    case OpKind::Barrier:
      os << "barrier";
      for (int q : op.qubits) os << " q" << q;
      break;
    case OpKind::SwapLabel:
      os << "swaplabel q" << op.qubits[0] << " q" << op.qubits[1];
      break;
    case OpKind::Conditional: {
      os << "if " << pred_to_text(op.pred) << ": ";
      for (std::size_t i = 0; i < op.body.size(); ++i) {
        if (i) os << "; ";
        op_to_text(op.body[i], os);
      }
      break;
    }
  }
}

struct Parser {
  Circuit circuit;
  int line_no = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("circuit text line " + std::to_string(line_no) + ": " + msg);
  }

  static std::vector<std::string> tokenize(const std::string& s) {
    std::vector<std::string> toks;
    std::istringstream is(s);
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
  }

  int parse_qubit(const std::string& tok) const {
    if (tok.size() < 2 || tok[0] != 'q') fail("expected qubit operand, got " + tok);
    return std::stoi(tok.substr(1));
  }

  double parse_double(const std::string& tok) const {
    try {
      std::size_t used = 0;
      double d = std::stod(tok, &used);
      if (used != tok.size()) fail("bad number: " + tok);
      return d;
    } catch (const std::exception&) {
      fail("bad number: " + tok);
    }
  }

  Predicate parse_predicate(const std::string& text) const {
    Predicate p;
    auto eq = text.find("==");
    if (eq == std::string::npos) fail("conditional needs '=='");
    std::string lhs = text.substr(0, eq);
    p.value = std::stoull(text.substr(eq + 2));
    auto strip = [](std::string s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.pop_back();
      std::size_t b = 0;
      while (b < s.size() && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
      return s.substr(b);
    };
    lhs = strip(lhs);
    if (lhs.rfind("parity(", 0) == 0) {
      if (lhs.back() != ')') fail("unterminated parity(...)");
      std::string inner = strip(lhs.substr(7, lhs.size() - 8));
      p.kind = Predicate::Kind::ParityEquals;
      auto amp = inner.find('&');
      auto br = inner.find('[');
      if (amp != std::string::npos) {
        p.creg = strip(inner.substr(0, amp));
        p.mask = std::stoull(strip(inner.substr(amp + 1)), nullptr, 0);
      } else if (br != std::string::npos) {
        p.creg = strip(inner.substr(0, br));
        auto colon = inner.find(':', br);
        auto close = inner.find(']', br);
        if (colon == std::string::npos || close == std::string::npos)
          fail("parity range must be creg[a:b]");
        const int lo = std::stoi(inner.substr(br + 1, colon - br - 1));
        const int hi = std::stoi(inner.substr(colon + 1, close - colon - 1));
        if (hi <= lo || hi - lo > 63) fail("bad parity range");
        p.mask = ((std::uint64_t{1} << (hi - lo)) - 1) << lo;
      } else {
        p.creg = inner;
        p.mask = ~std::uint64_t{0};
      }
    } else {
      auto br = lhs.find('[');
      if (br != std::string::npos) {
        if (lhs.back() != ']') fail("bad bit reference");
        p.kind = Predicate::Kind::BitEquals;
        p.creg = lhs.substr(0, br);
        const int bit = std::stoi(lhs.substr(br + 1, lhs.size() - br - 2));
        p.mask = std::uint64_t{1} << bit;
      } else {
        p.kind = Predicate::Kind::RegEquals;
        p.creg = lhs;
      }
    }
    return p;
  }

  Operation parse_op(const std::string& line) {
    const auto toks = tokenize(line);
    const std::string& name = toks[0];
    auto need = [&](std::size_t n) {
      if (toks.size() != n) fail("wrong operand count for " + name);
    };
    if (name == "r1q") {
      need(5);
      return Operation::rot1q(parse_qubit(toks[1]), parse_double(toks[2]),
                              parse_double(toks[3]), parse_double(toks[4]));
    }
    if (name == "uzz") {
      need(4);
      return Operation::uzz(parse_qubit(toks[1]), parse_qubit(toks[2]),
                            parse_double(toks[3]));
    }
    if (name == "swaplabel") {
      need(3);
      return Operation::swap_label(parse_qubit(toks[1]), parse_qubit(toks[2]));
    }
    if (name == "barrier") {
      std::vector<int> qs;
      for (std::size_t i = 1; i < toks.size(); ++i)
        qs.push_back(parse_qubit(toks[i]));
      return Operation::barrier(std::move(qs));
    }
    if (name == "measure") {
      // measure q0 -> c[3]
      if (toks.size() != 4 || toks[2] != "->") fail("measure q -> creg[bit]");
      const std::string& dst = toks[3];
      auto br = dst.find('[');
      if (br == std::string::npos || dst.back() != ']') fail("measure dest");
      return Operation::measure(
          parse_qubit(toks[1]), dst.substr(0, br),
          std::stoi(dst.substr(br + 1, dst.size() - br - 2)));
    }
    if (name == "reset") {
      need(2);
      return Operation::reset(parse_qubit(toks[1]));
    }
    // Named single-qubit gates.
    static const std::map<std::string, Mat2 (*)()> kNamed = {
        {"x", gates::pauli_x},  {"y", gates::pauli_y}, {"z", gates::pauli_z},
        {"h", gates::hadamard}, {"s", gates::s_gate},  {"sdg", gates::sdg_gate},
        {"t", gates::t_gate},   {"tdg", gates::tdg_gate}, {"sx", gates::sqrt_x},
        {"sy", gates::sqrt_y},  {"sw", gates::sqrt_w}};
    auto it = kNamed.find(name);
    if (it != kNamed.end()) {
      need(2);
      return Operation::rot1q(parse_qubit(toks[1]), it->second());
    }
    if (name == "rx" || name == "ry" || name == "rz") {
      need(3);
      const int q = parse_qubit(toks[1]);
      const double a = parse_double(toks[2]);
      if (name == "rx") return Operation::rot1q(q, gates::rx(a));
      if (name == "ry") return Operation::rot1q(q, gates::ry(a));
      return Operation::rot1q(q, a, 0.0, 0.0);
    }
    fail("unknown op: " + name);
  }

  void parse_line(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    // strip
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
      line.pop_back();
    std::size_t b = 0;
    while (b < line.size() && std::isspace(static_cast<unsigned char>(line[b])))
      ++b;
    line = line.substr(b);
    if (line.empty()) return;

    if (line.rfind("qubits ", 0) == 0) {
      circuit.n_qubits = std::stoi(line.substr(7));
      return;
    }
    if (line.rfind("creg ", 0) == 0) {
      const auto toks = tokenize(line);
      if (toks.size() != 3) fail("creg <name> <width>");
      circuit.add_creg(toks[1], std::stoi(toks[2]));
      return;
    }
    if (line.rfind("meta ", 0) == 0) {
      const auto sp = line.find(' ', 5);
      if (sp == std::string::npos) fail("meta <key> <value>");
      circuit.metadata[line.substr(5, sp - 5)] = line.substr(sp + 1);
      return;
    }
    if (line.rfind("if ", 0) == 0) {
      // The ':' terminating the predicate comes after '==' (parity ranges
      // contain their own colon).
      auto eq = line.find("==");
      if (eq == std::string::npos) fail("conditional needs '=='");
      auto colon = line.find(':', eq);
      if (colon == std::string::npos) fail("conditional needs ':'");
      Predicate pred = parse_predicate(line.substr(3, colon - 3));
      std::vector<Operation> body;
      std::string rest = line.substr(colon + 1);
      std::size_t start = 0;
      while (start <= rest.size()) {
        auto semi = rest.find(';', start);
        std::string part = rest.substr(
            start, semi == std::string::npos ? std::string::npos : semi - start);
        std::size_t pb = 0;
        while (pb < part.size() && std::isspace(static_cast<unsigned char>(part[pb])))
          ++pb;
        part = part.substr(pb);
        while (!part.empty() &&
               std::isspace(static_cast<unsigned char>(part.back())))
          part.pop_back();
        if (!part.empty()) body.push_back(parse_op(part));
        if (semi == std::string::npos) break;
        start = semi + 1;
      }
      if (body.empty()) fail("conditional with empty body");
      circuit.append(Operation::conditional(std::move(pred), std::move(body)));
      return;
    }
    circuit.append(parse_op(line));
  }
};

}  // namespace

std::string write_circuit_text(const Circuit& c) {
  std::ostringstream os;
  os << "qubits " << c.n_qubits << "\n";
  for (const auto& [name, width] : c.cregs)
    os << "creg " << name << " " << width << "\n";
  for (const auto& [k, v] : c.metadata) os << "meta " << k << " " << v << "\n";
  for (const auto& op : c.ops) {
    op_to_text(op, os);
    os << "\n";
  }
  return os.str();
}

Circuit parse_circuit_text(const std::string& text) {
  Parser p;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    ++p.line_no;
    p.parse_line(line);
  }
  QCCD_CHECK(p.circuit.n_qubits > 0, "circuit text missing 'qubits N' header");
  p.circuit.validate();
  return p.circuit;
}

namespace {

json pred_to_json(const Predicate& p) {
  json j;
  switch (p.kind) {
    case Predicate::Kind::BitEquals: j["kind"] = "bit"; break;
    case Predicate::Kind::RegEquals: j["kind"] = "reg"; break;
    case Predicate::Kind::ParityEquals: j["kind"] = "parity"; break;
  }
  j["creg"] = p.creg;
  j["mask"] = p.mask;
  j["value"] = p.value;
  return j;
}

Predicate pred_from_json(const json& j) {
  Predicate p;
  const std::string kind = j.at("kind");
  if (kind == "bit")
    p.kind = Predicate::Kind::BitEquals;
  else if (kind == "reg")
    p.kind = Predicate::Kind::RegEquals;
  else if (kind == "parity")
    p.kind = Predicate::Kind::ParityEquals;
  else
    throw Error("bad predicate kind: " + kind);
  p.creg = j.at("creg");
  p.mask = j.value("mask", std::uint64_t{0});
  p.value = j.at("value");
  return p;
}

json op_to_json(const Operation& op) {
  json j;
  switch (op.kind) {
    case OpKind::Rot1Q:
      j["type"] = "r1q";
      j["q"] = op.qubits[0];
      j["angles"] = {op.euler[0], op.euler[1], op.euler[2]};
      break;
    case OpKind::UZZ:
      j["type"] = "uzz";
      j["q"] = {op.qubits[0], op.qubits[1]};
      j["theta"] = op.theta();
      break;
    case OpKind::Measure:
      j["type"] = "measure";
      j["q"] = op.qubits[0];
      j["creg"] = op.creg;
      j["bit"] = op.creg_bit;
      break;
    case OpKind::Reset:
      j["type"] = "reset";
      j["q"] = op.qubits[0];
      break;
    case OpKind::Barrier:
      j["type"] = "barrier";
      j["q"] = op.qubits;
      break;
    case OpKind::SwapLabel:
      j["type"] = "swaplabel";
      j["q"] = {op.qubits[0], op.qubits[1]};
      break;
    case OpKind::Conditional: {
      j["type"] = "if";
      j["pred"] = pred_to_json(op.pred);
      json body = json::array();
      for (const auto& nested : op.body) body.push_back(op_to_json(nested));
      j["ops"] = body;
      break;
    }
  }
  return j;
}

Operation op_from_json(const json& j) {
  const std::string type = j.at("type");
  if (type == "r1q") {
    const auto& a = j.at("angles");
    return Operation::rot1q(j.at("q"), a.at(0), a.at(1), a.at(2));
  }
  if (type == "uzz")
    return Operation::uzz(j.at("q").at(0), j.at("q").at(1), j.at("theta"));
  if (type == "measure")
    return Operation::measure(j.at("q"), j.at("creg"), j.at("bit"));
  if (type == "reset") return Operation::reset(j.at("q"));
  if (type == "barrier")
    return Operation::barrier(j.at("q").get<std::vector<int>>());
  if (type == "swaplabel")
    return Operation::swap_label(j.at("q").at(0), j.at("q").at(1));
  if (type == "if") {
    std::vector<Operation> body;
    for (const auto& nested : j.at("ops")) body.push_back(op_from_json(nested));
    return Operation::conditional(pred_from_json(j.at("pred")), std::move(body));
  }
  throw Error("bad op type: " + type);
}

}  // namespace

std::string write_circuit_json(const Circuit& c) {
  json j;
  j["qubits"] = c.n_qubits;
  j["cregs"] = c.cregs;
  j["metadata"] = c.metadata;
  json ops = json::array();
  for (const auto& op : c.ops) ops.push_back(op_to_json(op));
  j["ops"] = std::move(ops);
  return j.dump(2);
}

Circuit parse_circuit_json(const std::string& text) {
  const json j = json::parse(text);
  Circuit c(j.at("qubits").get<int>());
  const json cregs = j.value("cregs", json::object());
  for (const auto& [name, width] : cregs.items())
    c.add_creg(name, width.get<int>());
  const json metadata = j.value("metadata", json::object());
  for (const auto& [k, v] : metadata.items())
    c.metadata[k] = v.get<std::string>();
  for (const auto& opj : j.at("ops")) c.append(op_from_json(opj));
  c.validate();
  return c;
}

std::string write_noise_json(const NoiseModel& m) {
  json j;
  j["uzz_slope"] = m.uzz_slope;
  j["uzz_offset"] = m.uzz_offset;
  j["leak_per_2q"] = m.leak_per_2q;
  j["eps_1q"] = m.eps_1q;
  j["eps_mem_per_transport"] = m.eps_mem_per_transport;
  j["eps_spam"] = m.eps_spam;
  j["eps_meas_crosstalk"] = m.eps_meas_crosstalk;
  j["eps_reset_crosstalk"] = m.eps_reset_crosstalk;
  j["crosstalk_radius"] = m.crosstalk_radius;
  return j.dump(2);
}

NoiseModel parse_noise_json(const std::string& text) {
  const json j = json::parse(text);
  NoiseModel m;  // omitted fields keep the zone-averaged defaults
  m.uzz_slope = j.value("uzz_slope", m.uzz_slope);
  m.uzz_offset = j.value("uzz_offset", m.uzz_offset);
  m.leak_per_2q = j.value("leak_per_2q", m.leak_per_2q);
  m.eps_1q = j.value("eps_1q", m.eps_1q);
  m.eps_mem_per_transport = j.value("eps_mem_per_transport", m.eps_mem_per_transport);
  m.eps_spam = j.value("eps_spam", m.eps_spam);
  m.eps_meas_crosstalk = j.value("eps_meas_crosstalk", m.eps_meas_crosstalk);
  m.eps_reset_crosstalk = j.value("eps_reset_crosstalk", m.eps_reset_crosstalk);
  m.crosstalk_radius = j.value("crosstalk_radius", m.crosstalk_radius);
  m.validate();
  return m;
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream f(path);
  QCCD_CHECK(f.good(), "cannot open file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}
}  // namespace

Circuit load_circuit_file(const std::string& path) {
  const std::string text = slurp(path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    return parse_circuit_json(text);
  return parse_circuit_text(text);
}

void save_circuit_file(const Circuit& c, const std::string& path) {
  std::ofstream f(path);
  QCCD_CHECK(f.good(), "cannot write file: " + path);
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json")
    f << write_circuit_json(c);
  else
    f << write_circuit_text(c);
}

NoiseModel load_noise_file(const std::string& path) {
  return parse_noise_json(slurp(path));
}

}  // namespace qccd
