#pragma once

// JSON views of every report. Exact rationals appear as "num/den" strings
// next to a float mirror; complex values as [re, im].

#include <nlohmann/json.hpp>

#include "psc/constants.hpp"
#include "psc/experiments.hpp"
#include "psc/expsum.hpp"
#include "psc/factor.hpp"

namespace psc {

using Json = nlohmann::ordered_json;

Json exact(const Rational& q);  // {"exact": "num/den", "value": double}
Json to_json(const RationalExponent& c);
Json to_json(const CertifiedReal& r);
Json to_json(const Factorization& f);
Json to_json(const FactorSignature& s);

Json to_json(const CensusReport& r);
Json to_json(const SquarefreeReport& r);
Json to_json(const PsPrimeReport& r);
Json to_json(const ResidueHistogram& r);
Json to_json(const LevelReport& r);
Json to_json(const DiscrepancyReport& r);

Json to_json(const VinogradovParams& p);
Json to_json(const SumEval& e);

Json to_json(const InequalityReport& r);
Json to_json(const ThetaFeasibility& f);
Json to_json(const MaxCResult& r);
Json to_json(const AdmissiblePair& p);
Json to_json(const RegimeConstants& r);
Json to_json(const RBound& r);
Json to_json(const ThresholdResult& r);
Json to_json(const F1F2& f);
Json to_json(const MarginWindow& w);
Json to_json(const MarginReport& r);

}  // namespace psc
