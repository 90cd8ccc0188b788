#pragma once

// Crafted run files for each parser diagnostic, and a mutation fuzzer.

#include <random>
#include <string>
#include <vector>

#include "blscale/runfile.hpp"

namespace fixtures {

inline const std::string kValidRun =
    "# sample run\n"
    "name = fx\n"
    "u_star = 0.5\n"
    "U_inf = 14.2857\n"
    "nu = 1.5e-5\n"
    "re_theta = 12000\n"
    "\n"
    "0.001 8.0\n"
    "0.002 9.0\n"
    "0.004 10.1\n"
    "0.008 11.3\n";

struct Fixture {
  blscale::DiagCode code;
  std::string text;
};

inline std::vector<Fixture> diagnostic_fixtures() {
  using blscale::DiagCode;
  const std::string head = "name = r\nu_star = 0.5\nU_inf = 14\nnu = 1.5e-5\n\n";
  return {
      {DiagCode::Encoding, "name = r\xff\n"},
      {DiagCode::Encoding, std::string("name = r\0\n", 10)},
      {DiagCode::MalformedHeader, "name r\n"},
      {DiagCode::MalformedHeader, "name = r\nunits = metric\nu_star = 1\nU_inf = 1\nnu = 1\n\n1 1\n"},
      {DiagCode::MalformedHeader, "name = r\nu_star = 0.5\nU_inf = 14\nnu = 1.5e-5\n0.01 5\n"},
      {DiagCode::UnknownKey, "name = r\ncolor = red\n"},
      {DiagCode::DuplicateKey, "name = r\nname = s\n"},
      {DiagCode::MissingKey, "u_star = 0.5\nU_inf = 14\nnu = 1.5e-5\n\n0.01 5\n"},
      {DiagCode::MissingKey, "name = r\nu_star = 0.5\nU_inf = 14\n\n0.01 5\n"},
      {DiagCode::MalformedNumber, head + "0.01 abc\n"},
      {DiagCode::MalformedNumber, "name = r\nu_star = fast\nU_inf = 14\nnu = 1.5e-5\n\n0.01 5\n"},
      {DiagCode::ColumnCount, head + "0.01 5 7\n"},
      {DiagCode::ColumnCount, head + "0.01\n"},
      {DiagCode::NoData, head},
      {DiagCode::NoData, head + "# only a comment\n"},
      {DiagCode::NonMonotone, head + "0.02 5\n0.01 6\n"},
      {DiagCode::NonMonotone, head + "0.02 5\n0.02 6\n"},
      {DiagCode::InvalidRun, head + "-0.01 5\n"},
      {DiagCode::InvalidRun, "name = r\nu_star = 0\nU_inf = 14\nnu = 1.5e-5\n\n0.01 5\n"},
      {DiagCode::InvalidRun,
       "name = r\nu_star = 0.5\nU_inf = 14\nnu = 1.5e-5\ntau = 1\nrho = 1\n\n0.01 5\n"},
      {DiagCode::InvalidRun,
       "name = r\nu_star = 0.5\nU_inf = 14\nnu = 1.5e-5\ntheta = 0.01\nre_theta = 5\n\n0.01 5\n"},
  };
}

/// Random bytes, or a valid file with byte-level mutations.
inline std::string fuzz_input(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> mode(0, 3);
  const std::string alphabet = "0123456789.eE+-= \t\n\r#abcnufi_UNAxyz\xc3\xa9\xff";
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  switch (mode(rng)) {
    case 0: {
      std::string s(std::uniform_int_distribution<int>(0, 300)(rng), '\0');
      for (char& c : s) c = static_cast<char>(byte(rng));
      return s;
    }
    case 1: {
      std::string s(std::uniform_int_distribution<int>(0, 300)(rng), ' ');
      for (char& c : s) c = alphabet[pick(rng)];
      return s;
    }
    default: {
      std::string s = kValidRun;
      const int edits = std::uniform_int_distribution<int>(1, 8)(rng);
      for (int e = 0; e < edits && !s.empty(); ++e) {
        const std::size_t pos = std::uniform_int_distribution<std::size_t>(0, s.size() - 1)(rng);
        switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
          case 0: s[pos] = alphabet[pick(rng)]; break;
          case 1: s.erase(pos, std::uniform_int_distribution<std::size_t>(1, 6)(rng)); break;
          default: s.insert(pos, 1, static_cast<char>(byte(rng))); break;
        }
      }
      return s;
    }
  }
}

}  // namespace fixtures
