//
// molfp - Copyright 2026 The molfp Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "molfp/smiles/elements.h"

#include <array>

namespace molfp::smiles {
namespace {
constexpr std::array<std::string_view, 119> kSymbols = {
  "",   "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na",
  "Mg", "Al", "Si", "P",  "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",
  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As", "Se", "Br",
  "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag",
  "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr",
  "Nd", "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu",
  "Hf", "Ta", "W",  "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi",
  "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U",  "Np", "Pu", "Am",
  "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh",
  "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og",
};

constexpr int kBoron = 5, kCarbon = 6, kNitrogen = 7, kOxygen = 8,
              kFluorine = 9, kPhosphorus = 15, kSulfur = 16, kChlorine = 17,
              kArsenic = 33, kSelenium = 34, kBromine = 35, kIodine = 53;

constexpr std::array kValB = { 3 };
constexpr std::array kValC = { 4 };
constexpr std::array kValN = { 3, 5 };
constexpr std::array kValO = { 2 };
constexpr std::array kValP = { 3, 5 };
constexpr std::array kValS = { 2, 4, 6 };
constexpr std::array kValHalogen = { 1 };
}  // namespace

int atomic_number(std::string_view symbol) noexcept {
  if (symbol.empty() || symbol.size() > 2)
    return 0;
  for (int z = 1; z < static_cast<int>(kSymbols.size()); ++z) {
    if (kSymbols[z] == symbol)
      return z;
  }
  return 0;
}

std::string_view element_symbol(int atomic_number) noexcept {
  if (atomic_number <= 0 || atomic_number >= static_cast<int>(kSymbols.size()))
    return {};
  return kSymbols[atomic_number];
}

bool is_organic_subset(int atomic_number) noexcept {
  return !allowed_valences(atomic_number).empty();
}

bool is_aromatizable(int atomic_number) noexcept {
  switch (atomic_number) {
  case kBoron:
  case kCarbon:
  case kNitrogen:
  case kOxygen:
  case kPhosphorus:
  case kSulfur:
  case kSelenium:
  case kArsenic:
    return true;
  default:
    return false;
  }
}

std::span<const int> allowed_valences(int atomic_number) noexcept {
  switch (atomic_number) {
  case kBoron:
    return kValB;
  case kCarbon:
    return kValC;
  case kNitrogen:
    return kValN;
  case kOxygen:
    return kValO;
  case kPhosphorus:
    return kValP;
  case kSulfur:
    return kValS;
  case kFluorine:
  case kChlorine:
  case kBromine:
  case kIodine:
    return kValHalogen;
  default:
    return {};
  }
}

}  // namespace molfp::smiles
