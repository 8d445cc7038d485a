// Power moments of Kloosterman sums over GF(16) from the weight distribution
// of the code attached to DC_1^+(2,16), next to the direct sums.

#include <iostream>

#include <ominus/ominus.hpp>

int main() {
    using namespace ominus;
    const FieldCtx f = make_field(4);
    const DoubleCosetSpec spec{1, Sign::plus, 2, f};
    const RecursionReport rep = recursive_moments(spec, 8);

    std::cout << spec.name() << " over " << f.describe() << '\n';
    for (unsigned h = 0; h <= rep.h_max; ++h)
        std::cout << "MK^" << h << " = " << to_decimal(rep.recursion.values[h])
                  << (rep.agree[h] ? "" : "  (differs from direct sum)") << '\n';
    return rep.verified() ? 0 : 1;
}
