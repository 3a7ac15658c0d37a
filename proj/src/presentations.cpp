#include "ncg/twisted_poly.hpp"

namespace ncg {

GeneratorSpec sphere_presentation(const Phase& ph, bool with_sphere_relation,
                                  bool twisted) {
  GeneratorSpec s(ph);
  int a = s.add_generator("a");
  int as = s.add_generator("a*");
  int b = s.add_generator("b");
  int bs = s.add_generator("b*");
  int t = s.add_generator("t");
  s.set_star_pair(a, as);
  s.set_star_pair(b, bs);
  if (twisted) {
    // a b = lambda b a and the star-twisted companions; a a* = a* a,
    // b b* = b* b, t central (zero exponents by default).
    s.set_commutation(b, a, -1);
    s.set_commutation(b, as, +1);
    s.set_commutation(bs, a, +1);
    s.set_commutation(bs, as, -1);
  }
  if (with_sphere_relation)
    s.add_relation({t, t}, {{{t}, Cyclo::one()},
                            {{a, as}, -Cyclo::one()},
                            {{b, bs}, -Cyclo::one()}});
  s.finalize();
  return s;
}

GeneratorSpec sphere_presentation_reversed(const Phase& ph) {
  GeneratorSpec s(ph);
  int t = s.add_generator("t");
  int bs = s.add_generator("b*");
  int b = s.add_generator("b");
  int as = s.add_generator("a*");
  int a = s.add_generator("a");
  s.set_star_pair(a, as);
  s.set_star_pair(b, bs);
  s.set_commutation(a, b, +1);
  s.set_commutation(a, bs, -1);
  s.set_commutation(as, b, -1);
  s.set_commutation(as, bs, +1);
  s.add_relation({t, t}, {{{t}, Cyclo::one()},
                          {{as, a}, -Cyclo::one()},
                          {{bs, b}, -Cyclo::one()}});
  s.finalize();
  return s;
}

}  // namespace ncg
