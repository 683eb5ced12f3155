#include "scsp/language.hpp"

namespace scsp {

Language all_unions(SchemePtr scheme) {
  Language lang(scheme);
  for (Mask m = 1; m <= scheme->full_mask(); ++m)
    lang.add(scheme->mask_name(m), UnionRel{m});
  return lang;
}

Language basics_language(SchemePtr scheme) {
  Language lang(scheme);
  for (int b = 0; b < scheme->size(); ++b)
    lang.add(scheme->basics[b], UnionRel{bit(b)});
  return lang;
}

Language rcc5_gamma_prime(SchemePtr rcc5) {
  Mask pp = bit(rcc5->basic_index("PP"));
  Mask ppi = bit(rcc5->basic_index("PPi"));
  Mask dr = bit(rcc5->basic_index("DR"));
  Mask eq = bit(rcc5->basic_index("EQ"));
  std::vector<Mask> excluded = {pp | ppi, pp | ppi | dr, pp | ppi | eq,
                                pp | ppi | dr | eq};
  Language lang(rcc5);
  for (Mask m = 1; m <= rcc5->full_mask(); ++m) {
    bool out = false;
    for (Mask e : excluded) out = out || m == e;
    if (!out) lang.add(rcc5->mask_name(m), UnionRel{m});
  }
  return lang;
}

}  // namespace scsp
