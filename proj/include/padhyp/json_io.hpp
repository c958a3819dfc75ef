#pragma once

#include <json.hpp>

#include "padhyp/chain.hpp"
#include "padhyp/growth.hpp"
#include "padhyp/hypergeom.hpp"
#include "padhyp/liouville.hpp"
#include "padhyp/solver.hpp"
#include "padhyp/theta.hpp"

namespace padhyp {

using Json = nlohmann::ordered_json;

// Rationals travel as "a/b" strings. Parsers throw ParseError.

Json to_json(const PadicConfig& c);
PadicConfig config_from_json(const Json& j);

Json to_json(const PadicScalar& s);
PadicScalar scalar_from_json(const Json& j, const DworkField& field);

Json to_json(const PadicParameter& a);
PadicParameter parameter_from_json(const Json& j, unsigned long p);

Json to_json(const WeylOperator& op);
WeylOperator operator_from_json(const Json& j, const DworkField& field, Window window);

Json to_json(const ThetaForm& t);
ThetaForm theta_from_json(const Json& j, const DworkField& field);

Json to_json(const HypParams& h);
HypParams params_from_json(const Json& j, unsigned long p);

Json to_json(const GrowthCertificate& g);
GrowthCertificate growth_from_json(const Json& j);

Json to_json(const CoefficientSeries& s);
CoefficientSeries series_from_json(const Json& j, const DworkField& field);

Json to_json(const DecompositionChain& c);
DecompositionChain chain_from_json(const Json& j, unsigned long p);

Json to_json(const Valuation& v, unsigned long p);
Json to_json(const IdentityReport& r);
Json to_json(const LiouvilleVerdict& v);
Json to_json(const SigmaScanReport& r);
Json to_json(const RadiusReport& r);
Json to_json(const SolveReport& r);
Json to_json(const InjectivityReport& r);

}  // namespace padhyp
