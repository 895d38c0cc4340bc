// Brackets ||M_f||_{p,q} for a few symbols and exponent pairs.
#include <iostream>

#include "mtoeplitz/bracket.hpp"
#include "mtoeplitz/experiments/report.hpp"

int main() {
  using namespace mtoeplitz;
  struct Case {
    const char* label;
    SymbolSpec f;
    double p, q;
  };
  const Case cases[] = {
      {"n^-2, p=1, q=2", SymbolSpec::power(2), 1, 2},
      {"n^-1, p=q=2", SymbolSpec::power(1), 2, 2},
      {"n^-2, p=2, q=inf", SymbolSpec::power(2), 2, kInfinity},
      {"u^-1.5 v^-1.5, p=1.5, q=3", SymbolSpec::product_power(1.5, 1.5), 1.5, 3},
  };
  for (const auto& c : cases) {
    const auto b = bracket(c.f, c.p, c.q);
    std::cout << c.label << ": " << format_real_short(b.lower) << " <= norm <= "
              << (b.upper ? format_real_short(*b.upper) : std::string("inf")) << "  (" << to_string(b.witness_kind)
              << ")\n";
  }
}
