#include "grips/model_io.hpp"

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "grips/errors.hpp"

namespace grips {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

struct Line {
  int number;
  std::string key;
  std::string value;
};

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& msg) {
  throw input_error(origin + ":" + std::to_string(line) + ": " + msg);
}

std::vector<Line> parse_lines(const std::string& text,
                              const std::string& origin) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::string line = trim(raw);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      fail(origin, number, "expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(origin, number, "empty key");
    if (value.empty()) fail(origin, number, "empty value for '" + key + "'");
    out.push_back({number, key, value});
  }
  return out;
}

long long parse_int(const std::string& origin, int line,
                    const std::string& what, const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, what + " must be an integer, got '" + s + "'");
  }
}

void check_letters(const std::string& origin, int line,
                   const std::string& letters) {
  if (letters.empty()) fail(origin, line, "empty generator list");
  for (char c : letters) {
    if (!std::islower(static_cast<unsigned char>(c)))
      fail(origin, line,
           std::string("generators must be lowercase letters, got '") + c +
               "'");
    if (letters.find(c) != letters.rfind(c))
      fail(origin, line, std::string("duplicate generator '") + c + "'");
  }
}

std::unique_ptr<GroupModel> build_factor(const std::string& origin, int line,
                                         const std::string& value) {
  std::vector<std::string> t = tokens(value);
  if (t.size() == 2 && t[0] == "free") {
    check_letters(origin, line, t[1]);
    return make_free_model(t[1]);
  }
  if (t.size() == 3 && t[0] == "cyclic") {
    long long order = parse_int(origin, line, "cyclic order", t[1]);
    if (order < 1) fail(origin, line, "cyclic order must be positive");
    if (t[2].size() != 1)
      fail(origin, line, "cyclic factor needs a single letter");
    check_letters(origin, line, t[2]);
    return make_cyclic_model(static_cast<std::size_t>(order), t[2][0]);
  }
  fail(origin, line,
       "factor must be 'free <letters>' or 'cyclic <order> <letter>', got '" +
           value + "'");
}

}  // namespace

void attach_peripheral(GroupModel& m, const std::string& value) {
  std::vector<std::string> t = tokens(value);
  if (t.size() == 2 && t[0] == "factor") {
    PeripheralSpec spec;
    spec.kind = PeripheralSpec::Kind::factor;
    try {
      std::size_t used = 0;
      spec.factor = std::stoi(t[1], &used);
      if (used != t[1].size()) throw std::invalid_argument(t[1]);
    } catch (const std::exception&) {
      throw input_error("peripheral factor index must be an integer, got '" +
                        t[1] + "'");
    }
    m.add_peripheral(spec);
    return;
  }
  if (t.size() >= 2 && t[0] == "generated") {
    PeripheralSpec spec;
    spec.kind = PeripheralSpec::Kind::generated;
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (t[i].size() != 1)
        throw input_error("peripheral generator must be a single letter, got '" +
                          t[i] + "'");
      std::size_t pos = m.generator_names().find(t[i][0]);
      if (pos == std::string::npos)
        throw input_error("peripheral generator '" + t[i] +
                          "' is not in the model alphabet");
      spec.generators.push_back(static_cast<int>(pos));
    }
    m.add_peripheral(spec);
    return;
  }
  throw input_error(
      "peripheral must be 'factor <index>' or 'generated <letters>', got '" +
      value + "'");
}

ModelFile parse_model_text(const std::string& text,
                           const std::string& origin) {
  std::vector<Line> lines = parse_lines(text, origin);

  std::string name, kind, letters, letter;
  long long order = -1;
  int kind_line = 0;
  std::vector<std::pair<int, std::string>> relators, rows, factors,
      peripherals;

  for (const Line& l : lines) {
    if (l.key == "name") {
      if (!name.empty()) fail(origin, l.number, "duplicate name");
      name = l.value;
    } else if (l.key == "kind") {
      if (!kind.empty()) fail(origin, l.number, "duplicate kind");
      kind = l.value;
      kind_line = l.number;
    } else if (l.key == "letters") {
      if (!letters.empty()) fail(origin, l.number, "duplicate letters");
      check_letters(origin, l.number, l.value);
      letters = l.value;
    } else if (l.key == "order") {
      if (order >= 0) fail(origin, l.number, "duplicate order");
      order = parse_int(origin, l.number, "order", l.value);
      if (order < 1) fail(origin, l.number, "order must be positive");
    } else if (l.key == "letter") {
      if (!letter.empty()) fail(origin, l.number, "duplicate letter");
      if (l.value.size() != 1)
        fail(origin, l.number, "letter must be a single character");
      check_letters(origin, l.number, l.value);
      letter = l.value;
    } else if (l.key == "relator") {
      relators.emplace_back(l.number, l.value);
    } else if (l.key == "row") {
      rows.emplace_back(l.number, l.value);
    } else if (l.key == "factor") {
      factors.emplace_back(l.number, l.value);
    } else if (l.key == "peripheral") {
      peripherals.emplace_back(l.number, l.value);
    } else {
      fail(origin, l.number, "unknown key '" + l.key + "'");
    }
  }

  if (kind.empty()) throw input_error(origin + ": missing 'kind'");

  std::unique_ptr<GroupModel> model;
  if (kind == "free") {
    if (letters.empty()) fail(origin, kind_line, "free model needs 'letters'");
    model = make_free_model(letters);
  } else if (kind == "cyclic") {
    if (order < 1 || letter.empty())
      fail(origin, kind_line, "cyclic model needs 'order' and 'letter'");
    model = make_cyclic_model(static_cast<std::size_t>(order), letter[0]);
  } else if (kind == "table") {
    if (letters.empty()) fail(origin, kind_line, "table model needs 'letters'");
    if (rows.size() != letters.size())
      fail(origin, kind_line,
           "table model needs one 'row' per letter (" +
               std::to_string(letters.size()) + " expected, " +
               std::to_string(rows.size()) + " given)");
    std::vector<std::vector<int>> right_mult;
    for (const auto& [ln, value] : rows) {
      std::vector<int> row;
      for (const std::string& t : tokens(value))
        row.push_back(static_cast<int>(parse_int(origin, ln, "row entry", t)));
      right_mult.push_back(std::move(row));
    }
    model = make_table_model(letters, std::move(right_mult));
  } else if (kind == "free-product" || kind == "direct-product") {
    if (factors.size() < 2)
      fail(origin, kind_line, kind + " needs at least two 'factor' lines");
    std::vector<std::unique_ptr<GroupModel>> fs;
    for (const auto& [ln, value] : factors)
      fs.push_back(build_factor(origin, ln, value));
    model = kind == "free-product" ? make_free_product(std::move(fs))
                                   : make_direct_product(std::move(fs));
  } else if (kind == "small-cancellation") {
    if (letters.empty())
      fail(origin, kind_line, "small-cancellation model needs 'letters'");
    if (relators.empty())
      fail(origin, kind_line, "small-cancellation model needs 'relator' lines");
    std::vector<Word> rel;
    for (const auto& [ln, value] : relators) {
      try {
        rel.push_back(parse_word(value, letters));
      } catch (const input_error& e) {
        fail(origin, ln, e.what());
      }
    }
    model = make_small_cancellation_model(letters, std::move(rel));
  } else {
    fail(origin, kind_line, "unknown kind '" + kind + "'");
  }

  for (const auto& [ln, value] : peripherals) {
    try {
      attach_peripheral(*model, value);
    } catch (const input_error& e) {
      fail(origin, ln, e.what());
    }
  }

  ModelFile out;
  out.name = name.empty() ? origin : name;
  out.model = std::move(model);
  return out;
}

ModelFile load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ModelFile mf = parse_model_text(buf.str(), path);
  if (mf.name == path) mf.name = std::filesystem::path(path).stem().string();
  return mf;
}

std::string describe_model(const GroupModel& m) {
  std::ostringstream out;
  out << "kind = " << kind_name(m.kind()) << "\n";
  out << "alphabet = " << m.generator_names() << "\n";
  if (auto n = m.order())
    out << "order = " << *n << "\n";
  else
    out << "order = infinite\n";
  out << "peripherals = " << m.peripheral_count() << "\n";
  for (int lambda = 0; lambda < m.peripheral_count(); ++lambda) {
    const PeripheralSpec& spec = m.peripheral(lambda);
    out << "peripheral." << lambda << " = ";
    if (spec.kind == PeripheralSpec::Kind::factor) {
      out << "factor " << spec.factor;
    } else {
      out << "generated";
      for (int g : spec.generators) out << ' ' << m.generator_names()[g];
    }
    out << "\n";
    const auto& elems = m.peripheral_elements(lambda);
    out << "peripheral." << lambda << ".order = ";
    if (elems)
      out << elems->size() << "\n";
    else
      out << "infinite\n";
  }
  return out.str();
}

}  // namespace grips
