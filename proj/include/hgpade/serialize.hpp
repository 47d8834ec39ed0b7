#pragma once

#include <string>

#include <json.hpp>

#include "hgpade/arith.hpp"
#include "hgpade/criterion.hpp"
#include "hgpade/numerics.hpp"
#include "hgpade/pade.hpp"
#include "hgpade/wronskian.hpp"

namespace hgpade {

/// Keys sorted, rationals as canonical strings, doubles shortest round-trip,
/// non-finite doubles as null.
using Json = nlohmann::json;

Json to_json(const Rational& x);
Json to_json(const std::vector<Rational>& v);
Json to_json(const RationalPoly& p);
Json to_json(const LaurentTail& t);
Json to_json(const HypothesisFlags& f);
Json to_json(const HypergeometricSpec& spec);
Json to_json(const PadeSystem& system);
Json to_json(const VerificationReport& report);
Json to_json(const WronskianReport& report);
Json to_json(const IdentityReport& report);
Json to_json(const RateFit& fit);
Json to_json(const MeasureReport& report);
Json to_json(const HeightData& h);
Json to_json(const DenominatorProfile& profile);
Json to_json(const PlaceBudgetCheck& check);
Json real(double x);

Rational rational_from_json(const Json& j);
std::vector<Rational> rationals_from_json(const Json& j);
RationalPoly poly_from_json(const Json& j);
LaurentTail tail_from_json(const Json& j);
HypergeometricSpec spec_from_json(const Json& j);
/// Throws std::invalid_argument on malformed input.
PadeSystem system_from_json(const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);
/// "k,D_k,log_D_k" header followed by one row per k = 0..N.
std::string profile_csv(const DenominatorProfile& profile);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);

}  // namespace hgpade
