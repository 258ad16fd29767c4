#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "minram/json_io.hpp"

namespace minram::test {

inline std::string data_path(const std::string& rel) { return std::string(MINRAM_DATA) + "/" + rel; }

inline Json load_json(const std::string& rel) {
  std::ifstream in(data_path(rel));
  if (!in) throw std::runtime_error("missing fixture " + rel);
  return Json::parse(in);
}

inline NilpotentGroup load_group(const std::string& name) {
  return nilpotent_from_json(load_json("groups/" + name + ".json"));
}

inline PcGroup load_pc(const std::string& name) { return group_from_json(load_json("groups/" + name + ".json")); }

inline std::vector<Int> ints(std::initializer_list<long> xs) { return {xs.begin(), xs.end()}; }

}  // namespace minram::test
