#include "medlat/normalizer.h"

namespace medlat::normalizer {

const std::vector<std::string>& ci_exceptions() {
    static const std::vector<std::string> words = {
        "accipio",     "acies",        "acidus",     "aedificium",  "aedifico",   "amicitia",
        "artificium",  "aspicio",      "audacia",    "auspicium",   "beneficium", "capacitas",
        "concilium",   "concipio",     "conficio",   "conspicio",   "crucifigo",  "crucifixus",
        "decido",      "decima",       "decimus",    "decipio",     "deficio",    "despicio",
        "dicio",       "difficilis",   "dulcis",     "duodecim",    "edificium",  "efficacia",
        "efficio",     "excito",       "exercitium", "exercitus",   "facies",     "facilis",
        "facinus",     "facio",        "fallacia",   "felicitas",   "fiducia",    "iacio",
        "illicitus",   "incido",       "incipio",    "inficio",     "inspicio",   "interficio",
        "iudicialis",  "iudicium",     "licitus",    "lucidus",     "maleficium", "medicina",
        "medicus",     "occido",       "officialis", "officina",    "officium",   "percipio",
        "perficio",    "pertinacia",   "placidus",   "placitum",    "praecipio",  "praecipuus",
        "precipuus",   "principalis",  "principatus", "principium", "proficio",   "prospicio",
        "prouincia",   "prouincialis", "provincia",  "provincialis", "pudicitia", "recipio",
        "recito",      "reficio",      "respicio",   "sacrificium", "simplicitas", "socia",
        "societas",    "socius",       "solacium",   "sollicitudo", "specialis",  "specialiter",
        "species",     "speciosus",    "sufficio",   "supplicium",  "suscipio",   "suspicio",
        "tacitus",     "tredecim",     "uicarius",   "uicinitas",   "uicinus",    "undecim",
        "vicarius",    "vicinitas",    "vicinus",
    };
    return words;
}

Ruleset default_gold_ruleset() {
    Ruleset rules("gold-orthography");
    rules.add({"v_u", "v", "u", Position::anywhere, {}, {}, true});

    RewriteRule ci{"ci_ti", "ci", "ti", Position::middle, {}, {}, true};
    ci.exceptions.insert(ci_exceptions().begin(), ci_exceptions().end());
    rules.add(std::move(ci));

    // Word-specific alternations. Disabled: blanket application would damage
    // regular c, e and h spellings; enable them (or mine lexicon-backed rules)
    // only for a vetted word list.
    rules.add({"c_k_lexical", "c", "k", Position::anywhere, {}, {"cinga", "thocarz", "stassec", "caritas"}, false});
    rules.add({"e_ae_lexical", "e", "ae", Position::anywhere, {}, {"demon", "equidisto", "evum", "euum"}, false});
    rules.add({"e_oe_lexical", "e", "oe", Position::middle, {}, {"diocesanus"}, false});
    rules.add({"th_t_lexical", "th", "t", Position::anywhere, {}, {"thomcus", "plathea"}, false});
    rules.add({"h_insert_lexical", "u", "hu", Position::initial, {}, {"ungaria"}, false});
    return rules;
}

} // namespace medlat::normalizer
