#ifndef CRNF_NORMALFORM_HPP
#define CRNF_NORMALFORM_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crnf/hypersurface.hpp"

namespace crnf {

/// One normalization condition: tr^t phi_{kml} = 0.
struct Condition {
    int k, m, l, t;

    friend bool operator==(const Condition&, const Condition&) = default;
};

enum class LineKind { k_ge2, k_eq1, k_eq0 };

/// The indices selecting which coefficients a line (k,l) normalizes.
/// Only choice-bearing lines are represented: k>=2 with l>=1 (pair m, mp),
/// k=1 with l>=2 (triple m, mp, mpp), k=0 with l>=3 (even pair m, mp and
/// odd pair mt, mtp). Lower l on each line kind carries fixed conditions.
struct LineChoice {
    LineKind kind;
    int k = 0, l = 0;
    int m = 0, mp = 0, mpp = 0;
    int mt = 0, mtp = 0;

    friend bool operator==(const LineChoice&, const LineChoice&) = default;
};

/// True iff the choice satisfies the combinatorial admissibility rules:
/// indices in [0,l], the distinguished index m >= 1, pairwise distinctness,
/// the parity rule on k=1 lines (nonzero indices not all of one parity),
/// and even/odd pair parity on k=0 lines.
bool validate_choice(const LineChoice& c);

/// The exact binomial determinant deciding solvability of the line system
/// for this choice: 2x2 for k>=2 lines, 3x3 for k=1 lines, product of the
/// even-pair and odd-pair 2x2 determinants for k=0 lines. Zero exactly on
/// inadmissible choices.
Rational choice_determinant(const LineChoice& c);

enum class Preset { chern_moser, nf1, nf2, nf12, min_l, mixed };

std::string preset_name(Preset p);
std::optional<Preset> preset_from_name(const std::string& s);

struct LineKey {
    int k, l;
    friend auto operator<=>(const LineKey&, const LineKey&) = default;
};

/// A complete assignment of admissible choices to every choice-bearing line
/// of weight k+2l <= max_weight.
class NormalFormSpec {
  public:
    static NormalFormSpec from_table(std::vector<LineChoice> choices, int max_weight);

    int max_weight() const { return w_; }
    const std::map<LineKey, LineChoice>& table() const { return table_; }
    const LineChoice& choice(int k, int l) const;
    std::optional<Preset> tag() const { return tag_; }

  private:
    friend NormalFormSpec preset(Preset tag, int max_weight);
    NormalFormSpec(std::map<LineKey, LineChoice> t, int w, std::optional<Preset> tag)
        : table_(std::move(t)), w_(w), tag_(tag) {}
    std::map<LineKey, LineChoice> table_;
    int w_;
    std::optional<Preset> tag_;
};

NormalFormSpec preset(Preset tag, int max_weight);

/// Every choice-bearing line key (k,l) with k+2l <= max_weight.
std::vector<LineKey> choice_lines_up_to(int max_weight);

/// The full condition list of weight <= w, including the fixed conditions
/// phi_{k00}=0, phi_101=0, phi_210=0, phi_002=0, phi_111=0, tr phi_220=0.
std::vector<Condition> conditions_up_to(const NormalFormSpec& spec, int w);

struct Violation {
    Condition cond;
    PuSeries residual;
};

/// Evaluate every condition on the jet; returns the violated ones.
std::vector<Violation> check(const HypersurfaceJet& m, const NormalFormSpec& spec);

}  // namespace crnf

#endif
