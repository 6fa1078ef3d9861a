#pragma once

#include <string>

#include "json.hpp"

#include "gca/katsura.hpp"
#include "gca/steinberg.hpp"

namespace gca {

// One displayed intersection identity U_{g,m} cap U_{h,m} = union of
// U'_{g,3n+r}, certified symbolically (the MSFW family of the quotient) and
// by two-sided membership of sampled eventually periodic germs.
struct GrigIntCheck {
    std::string name;
    bool symbolic_ok = false;
    int samples = 0;
    int mismatches = 0;
};

GrigIntCheck check_grigint_identity(int pair_index, int m, int samples,
                                    const Bounds& bounds = {});

// The full Grigorchuk bundle: relations, MSFW tables, the non-Hausdorff and
// non-regular-open witnesses, the intersection identities, the char-0 kernel
// certificate and the char-2 singular element.
nlohmann::ordered_json grig_report_json(int depth = 12, const Bounds& bounds = {});

nlohmann::ordered_json katsura_report_json(const KatsuraTriple& triple, int msfw_len = 12,
                                           int condition_s_bound = 3);

nlohmann::ordered_json hausdorff_json(const HausdorffResult& res);
nlohmann::ordered_json support_json(const SupportReport& rep);
nlohmann::ordered_json region_report_json(const OpenRegionReport& rep);

}  // namespace gca
