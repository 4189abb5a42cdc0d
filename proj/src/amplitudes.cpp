#include "atomswap/amplitudes.hpp"

namespace atomswap {

std::string_view to_string(BellKind bell) {
    switch (bell) {
        case BellKind::PsiPlus: return "psi+";
        case BellKind::PsiMinus: return "psi-";
        case BellKind::PhiPlus: return "phi+";
        case BellKind::PhiMinus: return "phi-";
    }
    return "?";
}

BellKind parse_bell(std::string_view text) {
    if (text == "psi+") return BellKind::PsiPlus;
    if (text == "psi-") return BellKind::PsiMinus;
    if (text == "phi+") return BellKind::PhiPlus;
    if (text == "phi-") return BellKind::PhiMinus;
    throw std::invalid_argument("unknown Bell state '" + std::string(text) + "' (expected psi+, psi-, phi+, phi-)");
}

}  // namespace atomswap
