// Tour of the library: evaluate words, multiply elements, count spheres,
// and compute a certified growth rate.

#include "fim/counting.hpp"
#include "fim/growth.hpp"
#include "fim/munn.hpp"
#include "fim/words.hpp"

#include <iostream>

int main() {
    using namespace fim;
    const int rank = 2;

    MunnTree e = MunnTree::eval(parse_letters("abBA", rank), rank);
    std::cout << "eval(abBA) = " << e.text() << (e.is_idempotent() ? "  (idempotent)" : "")
              << "\n";

    MunnTree ab = MunnTree::eval(parse_letters("ab", rank), rank);
    MunnTree prod = e * ab;
    auto [t, k] = prod.trunk_branch_counts();
    std::cout << "eval(abBA) * eval(ab) = " << prod.text() << "  trunk " << t << ", branches " << k
              << ", length " << prod.length() << "\n";
    std::cout << "shortest word for it: " << letters_text(prod.geodesic_word()) << "\n\n";

    std::cout << "sphere sizes for rank 2:\n" << sphere_table(rank, 6).to_csv() << "\n";

    PrecisionReal rate = growth_rate(rank, 12);
    std::cout << "growth rate (12 digits): " << rate.value.fixed(12) << "\n";
    std::cout << "idempotent rate:         " << idempotent_growth_rate(rank, 12).value.fixed(12)
              << "\n";
    return 0;
}
