#pragma once

// Published 15-digit decimals of #S_p/p^2 (ordinary, non-anomalous classes)
// and #S'_p/p^2 (anomalous classes) for the primes 7 <= p < 150. Used only for
// comparison; every value the tools print is computed.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace ecstat {

struct ReferenceRow {
  std::uint64_t p;
  std::string_view density_S;
  std::string_view density_Sprime;
};

inline constexpr std::array<ReferenceRow, 32> kReferenceTable{{
    {7, "0.653061224489796", "0.0816326530612245"},
    {11, "0.702479338842975", "0.0413223140495868"},
    {13, "0.781065088757396", "0.0710059171597633"},
    {17, "0.802768166089965", "0.0276816608996540"},
    {19, "0.789473684210526", "0.0581717451523546"},
    {23, "0.790170132325142", "0.0415879017013233"},
    {29, "0.832342449464923", "0.0332936979785969"},
    {31, "0.842872008324662", "0.0312174817898023"},
    {37, "0.915997078159240", "0.0306793279766253"},
    {41, "0.868530636525877", "0.0118976799524093"},
    {43, "0.874526771227691", "0.0567874526771228"},
    {47, "0.853779990946129", "0.0208239022181983"},
    {53, "0.897828408686365", "0.0277678889284443"},
    {59, "0.866417696064349", "0.0166618787704683"},
    {61, "0.900295619457135", "0.0349368449341575"},
    {67, "0.940966807752283", "0.0147026063711294"},
    {71, "0.867883356476890", "0.0208292005554453"},
    {73, "0.932257459185588", "0.0270219553387127"},
    {79, "0.887357795225124", "0.0374939913475405"},
    {83, "0.898679053563652", "0.0178545507330527"},
    {89, "0.899886377982578", "0.0222194167403106"},
    {97, "0.943777234562653", "0.0255074928260176"},
    {101, "0.911675325948436", "0.00980296049406921"},
    {103, "0.913375435950608", "0.0288434348194929"},
    {107, "0.925845051969604", "0.00925845051969604"},
    {109, "0.945374968437000", "0.0181802878545577"},
    {113, "0.929751742501370", "0.0263137285613595"},
    {127, "0.936139872279745", "0.0169260338520677"},
    {131, "0.897674960666628", "0.0189382903094225"},
    {137, "0.952847780915339", "0.0108689860940913"},
    {139, "0.935665855804565", "0.0142849748977796"},
    {149, "0.933291293184992", "0.0133327327597856"},
}};

inline std::optional<ReferenceRow> reference_row(std::uint64_t p) {
  for (const auto& row : kReferenceTable) {
    if (row.p == p) return row;
  }
  return std::nullopt;
}

}  // namespace ecstat
