#pragma once

#include <json.hpp>

#include "rzl/convolution.hpp"
#include "rzl/moments.hpp"
#include "rzl/numtheory.hpp"
#include "rzl/params.hpp"
#include "rzl/resonator.hpp"
#include "rzl/search.hpp"
#include "rzl/sets.hpp"

namespace rzl {

// Insertion-ordered JSON keeps reruns byte-identical.
using json = nlohmann::ordered_json;

json to_json(const Params& p);
json to_json(const BoundRecord& b);
json to_json(const PrimeWindows& w);
json to_json(const SetFamily& fam);
json to_json(const Lemma58Report& rep);
json to_json(const RBoundReport& rep);
json to_json(const LogZetaSample& s);
json to_json(const ConvolutionReport& rep);
json to_json(const MomentReport& rep);
json to_json(const SearchResult& r);

} // namespace rzl
