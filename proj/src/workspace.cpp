// Copyright 2026 The semiflat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "semiflat/workspace.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "semiflat/error.hpp"
#include "semiflat/regularity.hpp"
#include "semiflat/reproduce.hpp"

namespace semiflat {

  using nlohmann::json;

  namespace {

    [[noreturn]] void schema_error(std::string const& path, std::string const& what) {
      throw ParseError(path + ": " + what, 0);
    }

    json const& field(json const& obj, char const* key, std::string const& path) {
      auto it = obj.find(key);
      if (it == obj.end()) {
        schema_error(path, std::string("missing \"") + key + "\"");
      }
      return *it;
    }

    std::string text_field(json const& obj, char const* key, std::string const& path) {
      auto const& v = field(obj, key, path);
      if (!v.is_string()) {
        schema_error(path + "." + key, "expected a string");
      }
      return v.get<std::string>();
    }

    Semiring::Rows table(json const& v, std::string const& path) {
      if (!v.is_array()) {
        schema_error(path, "expected an array of rows");
      }
      Semiring::Rows rows;
      for (std::size_t i = 0; i < v.size(); ++i) {
        auto const& row = v[i];
        if (!row.is_array()) {
          schema_error(path + "[" + std::to_string(i) + "]", "expected an array");
        }
        rows.emplace_back();
        for (auto const& x : row) {
          if (!x.is_number_unsigned()) {
            schema_error(path + "[" + std::to_string(i) + "]",
                         "expected non-negative integers");
          }
          rows.back().push_back(x.get<Elem>());
        }
      }
      return rows;
    }

    void check_size(json const& obj, std::size_t n, std::string const& path) {
      auto it = obj.find("size");
      if (it != obj.end() && (!it->is_number_unsigned() || it->get<std::size_t>() != n)) {
        schema_error(path + ".size", "does not match the tables");
      }
    }

    Side parse_side(std::string const& s, std::string const& where) {
      if (s == "left") return Side::left;
      if (s == "right") return Side::right;
      throw UnknownReference(where);
    }

    // Splits off the first `k` colon-separated fields; the rest stays whole
    // because semiring ids contain colons themselves.
    std::vector<std::string> split_head(std::string const& s, std::size_t k) {
      std::vector<std::string> out;
      std::size_t              pos = 0;
      for (std::size_t i = 0; i < k; ++i) {
        auto const c = s.find(':', pos);
        if (c == std::string::npos) {
          return {};
        }
        out.push_back(s.substr(pos, c - pos));
        pos = c + 1;
      }
      out.push_back(s.substr(pos));
      return out;
    }

    std::size_t line_of(std::string const& text, std::size_t byte) {
      byte = std::min(byte, text.size());
      return 1 + static_cast<std::size_t>(
                     std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
    }

    std::size_t cap_value(json const& caps, char const* key, std::size_t fallback) {
      auto it = caps.find(key);
      if (it == caps.end()) {
        return fallback;
      }
      if (!it->is_number_integer()) {
        throw BadCaps(std::string(key) + " must be an integer");
      }
      if (it->get<long long>() < 0) {
        throw BadCaps(std::string(key) + " is negative");
      }
      return it->get<std::size_t>();
    }

    std::vector<Elem> morphism_map(json const&        v,
                                   ModulePtr const&   dom,
                                   ModulePtr const&   cod,
                                   std::string const& path) {
      auto by_label = [&](Semimodule const& m, std::string const& l) {
        auto const& ls = m.labels();
        auto        it = std::find(ls.begin(), ls.end(), l);
        if (it == ls.end()) {
          schema_error(path, "no element labelled \"" + l + "\"");
        }
        return static_cast<Elem>(it - ls.begin());
      };
      std::vector<Elem> map(dom->size(), 0);
      if (v.is_array()) {
        if (v.size() != dom->size()) {
          schema_error(path, "needs one entry per element of the domain");
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (v[i].is_number_unsigned() && v[i].get<std::size_t>() < cod->size()) {
            map[i] = v[i].get<Elem>();
          } else if (v[i].is_string()) {
            map[i] = by_label(*cod, v[i].get<std::string>());
          } else {
            schema_error(path, "entry " + std::to_string(i) + " is not an element");
          }
        }
      } else if (v.is_object()) {
        std::vector<bool> seen(dom->size(), false);
        for (auto const& [k, x] : v.items()) {
          auto const d = by_label(*dom, k);
          if (!x.is_string()) {
            schema_error(path + "." + k, "expected a label");
          }
          map[d]  = by_label(*cod, x.get<std::string>());
          seen[d] = true;
        }
        if (std::count(seen.begin(), seen.end(), false) != 0) {
          schema_error(path, "is not total");
        }
      } else {
        schema_error(path, "expected an array or an object");
      }
      return map;
    }

    std::set<std::string> const kKinds = {
        "validate", "regularity", "flatness", "s_flatness", "survey", "tensor",
        "sequence", "exactness_suite", "closure", "reproduce"};

    bool optional_flag(json const& p, char const* key, std::string const& path) {
      auto it = p.find(key);
      if (it == p.end()) {
        return false;
      }
      if (!it->is_boolean()) {
        schema_error(path + "." + key, "expected true or false");
      }
      return it->get<bool>();
    }

    void check_request(WorkspaceConfig const& config, json const& p, std::string const& path) {
      auto const kind = p.at("kind").get<std::string>();
      auto semiring   = [&] { config.semiring(text_field(p, "semiring", path)); };
      if (kind == "regularity") {
        auto const s = config.semiring(text_field(p, "semiring", path));
        optional_flag(p, "sflatvon", path);
        optional_flag(p, "bez_neumann", path);
        if (auto it = p.find("matrix_scan"); it != p.end()) {
          auto const& n = field(*it, "n", path + ".matrix_scan");
          if (!n.is_number_unsigned() || n.get<std::size_t>() == 0) {
            schema_error(path + ".matrix_scan.n", "expected a positive integer");
          }
          if (auto m = it->find("matrices"); m != it->end()) {
            if (!m->is_array()) {
              schema_error(path + ".matrix_scan.matrices", "expected an array");
            }
            for (auto const& a : *m) {
              try {
                auto const rows = a.get<std::vector<std::vector<std::string>>>();
                if (rows.size() != n.get<std::size_t>()) {
                  schema_error(path + ".matrix_scan.matrices", "wrong matrix size");
                }
                matrix_from_labels(*s, rows);
              } catch (json::exception const&) {
                schema_error(path + ".matrix_scan.matrices",
                             "expected rows of element labels");
              } catch (BadParams const& e) {
                schema_error(path + ".matrix_scan.matrices", e.what());
              }
            }
          }
        }
      } else if (kind == "flatness") {
        auto const f = config.module(text_field(p, "subject", path));
        if (f->side() != Side::right) {
          schema_error(path + ".subject", "must be a right semimodule");
        }
        auto const t = text_field(p, "target", path);
        if (t != "S" && t != "all") {
          auto const m = config.module(t);
          if (m->side() != Side::left) {
            schema_error(path + ".target", "must be a left semimodule");
          }
        }
        if (auto it = p.find("route"); it != p.end()) {
          auto const r = it->is_string() ? it->get<std::string>() : "";
          if (r != "definition" && r != "ses" && r != "both") {
            schema_error(path + ".route", "expected definition, ses or both");
          }
        }
      } else if (kind == "s_flatness") {
        auto const f = config.module(text_field(p, "module", path));
        if (f->side() != Side::right) {
          schema_error(path + ".module", "must be a right semimodule");
        }
      } else if (kind == "survey" || kind == "exactness_suite" || kind == "closure") {
        semiring();
      } else if (kind == "tensor") {
        auto const f = config.module(text_field(p, "right", path));
        auto const m = config.module(text_field(p, "left", path));
        if (f->side() != Side::right || m->side() != Side::left) {
          schema_error(path, "tensor needs a right and a left semimodule");
        }
        if (auto it = p.find("oracles"); it != p.end()) {
          if (!it->is_string()) {
            schema_error(path + ".oracles", "expected the id of a left semimodule");
          }
          if (config.module(it->get<std::string>())->side() != Side::left) {
            schema_error(path + ".oracles", "must be a left semimodule");
          }
        }
      } else if (kind == "sequence") {
        auto const& maps = field(p, "maps", path);
        if (!maps.is_array() || maps.size() < 2) {
          schema_error(path + ".maps", "expected at least two morphism ids");
        }
        for (auto const& m : maps) {
          if (!m.is_string()) {
            schema_error(path + ".maps", "expected morphism ids");
          }
          config.morphism(m.get<std::string>());
        }
      } else if (kind == "reproduce") {
        auto const keys = reproduce_row_keys();
        if (auto it = p.find("only"); it != p.end()) {
          if (!it->is_array()) {
            schema_error(path + ".only", "expected an array of row keys");
          }
          for (auto const& k : *it) {
            if (!k.is_string()) {
              schema_error(path + ".only", "expected row keys");
            }
            if (std::find(keys.begin(), keys.end(), k.get<std::string>()) == keys.end()) {
              throw UnknownReference(k.get<std::string>());
            }
          }
        }
        if (auto it = p.find("override"); it != p.end()) {
          if (!it->is_object()) {
            schema_error(path + ".override", "expected an object of semiring ids");
          }
          for (auto const& [k, v] : it->items()) {
            if (!v.is_string()) {
              schema_error(path + ".override." + k, "expected a semiring id");
            }
            config.semiring(v.get<std::string>());
          }
        }
      }
    }

    SemiringPtr parse_semiring(json const& v, std::string const& path, std::string& id) {
      if (v.is_string()) {
        id = v.get<std::string>();
        return catalog_semiring(id);
      }
      if (!v.is_object()) {
        schema_error(path, "expected a catalog id or an object");
      }
      id = text_field(v, "id", path);
      if (auto it = v.find("catalog"); it != v.end()) {
        return catalog_semiring(text_field(v, "catalog", path));
      }
      auto const add = table(field(v, "add", path), path + ".add");
      auto const mul = table(field(v, "mul", path), path + ".mul");
      check_size(v, add.size(), path);
      Elem zero = 0, one = 1;
      if (auto it = v.find("zero"); it != v.end()) zero = it->get<Elem>();
      if (auto it = v.find("one"); it != v.end()) one = it->get<Elem>();
      std::vector<std::string> labels;
      if (auto it = v.find("labels"); it != v.end()) {
        labels = it->get<std::vector<std::string>>();
      }
      auto name = v.contains("name") ? text_field(v, "name", path) : id;
      return std::make_shared<Semiring const>(
          Semiring::from_tables(std::move(name), add, mul, zero, one, std::move(labels)));
    }

  }  // namespace

  SemiringPtr WorkspaceConfig::semiring(std::string const& id) const {
    if (auto it = semirings.find(id); it != semirings.end()) {
      return it->second;
    }
    try {
      return catalog_semiring(id);
    } catch (BadParams const&) {
      throw UnknownReference(id);
    }
  }

  ModulePtr WorkspaceConfig::module(std::string const& id) const {
    if (auto it = modules.find(id); it != modules.end()) {
      return it->second;
    }
    if (id.rfind("left:", 0) == 0 || id.rfind("right:", 0) == 0) {
      auto const parts = split_head(id, 1);
      return regular_module(semiring(parts[1]), parse_side(parts[0], id));
    }
    if (id.rfind("free:", 0) == 0) {
      auto const parts = split_head(id, 3);
      if (parts.empty() || parts[1].empty()
          || parts[1].find_first_not_of("0123456789") != std::string::npos) {
        throw UnknownReference(id);
      }
      auto const rank = std::stoul(parts[1]);
      if (rank == 0) {
        throw UnknownReference(id);
      }
      return free_semimodule(semiring(parts[3]), rank, parse_side(parts[2], id)).module;
    }
    if (id.rfind("ideal:", 0) == 0 || id.rfind("quotient:", 0) == 0) {
      auto const parts = split_head(id, 3);
      if (parts.empty()) {
        throw UnknownReference(id);
      }
      auto const s    = semiring(parts[3]);
      auto const side = parse_side(parts[1], id);
      Elem       a    = 0;
      try {
        a = s->element(parts[2]);
      } catch (BadParams const&) {
        throw UnknownReference(id);
      }
      SubSemimodule const ideal{regular_module(s, side), principal_ideal(*s, a, side)};
      return parts[0] == "ideal" ? as_module(ideal).module : bourne_quotient(ideal).module;
    }
    throw UnknownReference(id);
  }

  Morphism WorkspaceConfig::morphism(std::string const& id) const {
    if (auto it = morphisms.find(id); it != morphisms.end()) {
      return it->second;
    }
    throw UnknownReference(id);
  }

  void validate_caps(Caps const& caps) {
    if (caps.tensor_cap == 0 || caps.enum_cap == 0 || caps.module_size_bound == 0) {
      throw BadCaps("tensor_cap, enum_cap and module_size_bound must be positive");
    }
    if (caps.enum_cap > kDefaultEnumCap) {
      throw BadCaps("enum_cap above " + std::to_string(kDefaultEnumCap)
                    + " is not supported");
    }
  }

  void add_analysis(WorkspaceConfig& config, json const& request) {
    auto const index = config.analyses.size();
    auto const path  = "analyses[" + std::to_string(index) + "]";
    if (!request.is_object()) {
      schema_error(path, "expected an object");
    }
    auto const kind = text_field(request, "kind", path);
    if (kKinds.count(kind) == 0) {
      schema_error(path + ".kind", "unknown analysis \"" + kind + "\"");
    }
    try {
      check_request(config, request, path);
    } catch (json::exception const& e) {
      schema_error(path, e.what());
    }
    auto label = request.contains("id") ? text_field(request, "id", path)
                                        : kind + "#" + std::to_string(index);
    config.analyses.push_back({kind, std::move(label), request});
  }

  namespace {
    WorkspaceConfig build(json const& doc);
  }

  WorkspaceConfig parse_workspace_text(std::string const& text) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (json::parse_error const& e) {
      throw ParseError(e.what(), line_of(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    try {
      return build(doc);
    } catch (json::exception const& e) {
      // type errors inside otherwise well-formed entries
      throw ParseError(e.what(), 0);
    }
  }

  namespace {
  WorkspaceConfig build(json const& doc) {
    if (!doc.is_object()) {
      schema_error("$", "expected an object");
    }
    if (auto it = doc.find("schema_version"); it != doc.end()) {
      if (!it->is_number_integer() || it->get<int>() != kSchemaVersion) {
        schema_error("schema_version", "unsupported; expected " + std::to_string(kSchemaVersion));
      }
    }

    WorkspaceConfig config;
    if (auto it = doc.find("caps"); it != doc.end()) {
      if (!it->is_object()) {
        schema_error("caps", "expected an object");
      }
      Caps c;
      c.tensor_cap        = cap_value(*it, "tensor_cap", c.tensor_cap);
      c.slack             = cap_value(*it, "slack", c.slack);
      c.enum_cap          = cap_value(*it, "enum_cap", c.enum_cap);
      c.module_size_bound = cap_value(*it, "module_size_bound", c.module_size_bound);
      config.caps = c;
    }
    validate_caps(config.caps);

    auto list = [&](char const* key) -> json const& {
      static json const empty = json::array();
      auto it = doc.find(key);
      if (it == doc.end()) {
        return empty;
      }
      if (!it->is_array()) {
        schema_error(key, "expected an array");
      }
      return *it;
    };

    auto const& semirings = list("semirings");
    for (std::size_t i = 0; i < semirings.size(); ++i) {
      std::string id;
      auto        s = parse_semiring(semirings[i], "semirings[" + std::to_string(i) + "]", id);
      config.semirings[id] = std::move(s);
    }

    auto const& modules = list("semimodules");
    for (std::size_t i = 0; i < modules.size(); ++i) {
      auto const  path = "semimodules[" + std::to_string(i) + "]";
      auto const& v    = modules[i];
      if (!v.is_object()) {
        schema_error(path, "expected an object");
      }
      auto const id = text_field(v, "id", path);
      if (v.contains("ref")) {
        config.modules[id] = config.module(text_field(v, "ref", path));
        continue;
      }
      auto const base   = config.semiring(text_field(v, "base", path));
      auto const side   = text_field(v, "side", path);
      auto const add    = table(field(v, "add", path), path + ".add");
      auto const action = table(field(v, "action", path), path + ".action");
      check_size(v, add.size(), path);
      if (side != "left" && side != "right") {
        schema_error(path + ".side", "expected left or right");
      }
      config.modules[id] = share(Semimodule::from_tables(
          base, side == "left" ? Side::left : Side::right, add, action, id));
    }

    auto const& morphisms = list("morphisms");
    for (std::size_t i = 0; i < morphisms.size(); ++i) {
      auto const  path = "morphisms[" + std::to_string(i) + "]";
      auto const& v    = morphisms[i];
      if (!v.is_object()) {
        schema_error(path, "expected an object");
      }
      auto const id  = text_field(v, "id", path);
      auto const dom = config.module(text_field(v, "dom", path));
      auto const cod = config.module(text_field(v, "cod", path));
      config.morphisms.insert_or_assign(
          id, Morphism(dom, cod, morphism_map(field(v, "map", path), dom, cod, path + ".map")));
    }

    for (auto const& a : list("analyses")) {
      add_analysis(config, a);
    }
    return config;
  }
  }  // namespace

  WorkspaceConfig parse_workspace(std::filesystem::path const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw ParseError("cannot open " + path.string(), 0);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_workspace_text(buf.str());
  }

}  // namespace semiflat
