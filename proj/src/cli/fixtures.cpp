#include "reescalc/cli.hpp"

namespace reescalc::cli {
namespace {

const char* const kPuncturedM4 = R"(# (X^4, X^3Y, XY^3, Y^4), whose Ratliff-Rush closure is m^4
generators { row = X^4, X^3*Y, X*Y^3, Y^4 }
)";

const char* const kClosedJ = R"(# (X^5, X^2Y^2, Y^5) is Ratliff-Rush closed but not integrally closed
generators { row = X^5, X^2*Y^2, Y^5 }
)";

const char* const kParameter = R"(# <(X,0), (Y,X), (0,Y)>
rank = 2
generators {
  row = X, Y, 0
  row = 0, X, Y
}
)";

const char* const kSumOfEqual = R"(# I + I with I = (X^4, X^3Y^2, XY^6, Y^8)
rank = 2
generators {
  row = X^4, X^3*Y^2, X*Y^6, Y^8, 0, 0, 0, 0
  row = 0, 0, 0, 0, X^4, X^3*Y^2, X*Y^6, Y^8
}
options { nmax = 4 }
)";

const char* const kSumOfDistinct = R"(# I1 + I2
rank = 2
generators {
  row = X^6, X^5*Y^2, X^4*Y^3, X^3*Y^4, X*Y^7, Y^8, 0, 0, 0, 0, 0
  row = 0, 0, 0, 0, 0, 0, X^5, X^4*Y^2, X^3*Y^3, X*Y^6, Y^7
}
scale {
  ideal = X, Y
  ideal = X^2, X*Y, Y^2
}
options { nmax = 8 }
)";

const char* const kIndecomposable = R"(# rank two, seven generators, not a direct sum
rank = 2
generators {
  row = X^3, X^2*Y^2, X*Y^3, Y^5, 0, 0, 0
  row = 0, 0, X^3, 0, X^2*Y^2, X*Y^4, Y^5
}
candidates { col = X*Y^4, 0 }
factors {
  ideal = X, Y^2
  closure = X^5, Y^8
}
options { nmax = 3 }
)";

const char* const kSplit = R"(# m + m^2: a direct sum, so the indecomposability test cannot certify
rank = 2
generators {
  row = X, Y, 0, 0, 0
  row = 0, 0, X^2, X*Y, Y^2
}
factors {
  ideal = X, Y
  ideal = X, Y
  ideal = X, Y
}
)";

}  // namespace

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> corpus{
      {"indecomposable_buchsbaum",
       "buchsbaum",
       kIndecomposable,
       {{"/result/verdict", "true"}, {"/result/m_closure_in_m", "true"}, {"/result/product_clause", "true"},
        {"/result/h1_proxy", "1"}}},
      {"indecomposable_fitting",
       "fitting",
       kIndecomposable,
       {{"/result/mu", "7"},
        {"/result/fitting/1/generators", R"(["X^3", "X^2*Y^2", "X*Y^3", "Y^5"])"},
        {"/result/fitting/0/ord", "6"}}},
      {"indecomposable_iclose",
       "iclose",
       kIndecomposable,
       {{"/result/length_over_input", "1"}, {"/result/certified", "false"}}},
      {"indecomposable_indec", "indec", kIndecomposable, {{"/result/certified", "true"}, {"/result/ord_fitt1", "3"}}},
      {"indecomposable_thm12",
       "thm12",
       kIndecomposable,
       {{"/result/conditions/c1/verdict", R"("true")"}, {"/result/first_equal_power", "2"},
        {"/result/consistent", "true"}}},
      {"parameter_param", "param", kParameter, {{"/result/value", "true"}, {"/result/colength", "3"}}},
      {"parameter_rr", "rr", kParameter, {{"/result/closure/equals_input", "true"}}},
      {"ratliff_rush_closed_rr", "rr", kClosedJ, {{"/result/closure/equals_input", "true"}}},
      {"ratliff_rush_m4_rr",
       "rr",
       kPuncturedM4,
       {{"/result/closure/generators", R"(["X^4", "X^3*Y", "X^2*Y^2", "X*Y^3", "Y^4"])"}}},
      {"split_indec",
       "indec",
       kSplit,
       {{"/result/certified", "false"}, {"/result/message", R"("criterion inconclusive")"}},
       kExitUnproven},
      {"sum_distinct_br",
       "br",
       kSumOfDistinct,
       {{"/result/corollary/holds", "true"}, {"/result/coefficients/2", "0"}, {"/result/coefficients/3", "0"}}},
      {"sum_distinct_buchsbaum",
       "buchsbaum",
       kSumOfDistinct,
       {{"/result/verdict", "true"},
        {"/result/tail", R"([{"n": 2, "closure_equals_power": true}, {"n": 3, "closure_equals_power": true},
                             {"n": 4, "closure_equals_power": true}])"},
        {"/result/direct_sum/value", "true"},
        {"/result/direct_sum/consistent", "true"},
        {"/result/scaled/0/verdict", "true"},
        {"/result/scaled/1/verdict", "true"}}},
      {"sum_equal_buchsbaum",
       "buchsbaum",
       kSumOfEqual,
       {{"/result/verdict", "false"}, {"/result/witness", R"("X^2*Y^5*t1")"}}},
      {"sum_equal_thm12",
       "thm12",
       kSumOfEqual,
       {{"/result/conditions/c1/verdict", R"("true")"},
        {"/result/conditions/c2/verdict", R"("true")"},
        {"/result/conditions/c3/verdict", R"("true")"},
        {"/result/conditions/c4/verdict", R"("true")"}}},
  };
  return corpus;
}

}  // namespace reescalc::cli
