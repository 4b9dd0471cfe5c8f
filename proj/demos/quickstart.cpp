// quickstart — a small tour of the library: exact linear algebra over a
// chain ring, counting, a capacity value, and one codec round trip.

#include <iostream>

#include <chainring/chainring.hpp>

using namespace chainring;

int main() {
    // Z8 = the (2,3) chain ring with uniformizer 2
    auto R8 = Ring::integers_mod(2, 3);
    Mat A = Mat::from_rows(R8, {{4, 6, 2, 1}, {0, 0, 0, 2}, {2, 4, 6, 1}, {2, 0, 2, 1}});

    RcfResult r = rcf(A);
    std::cout << "row canonical form of A:\n";
    write_matrix(std::cout, r.rcf);

    SmithResult sm = smith(A);
    std::cout << "Smith diagonal:";
    for (uint64_t d : sm.d) std::cout << " " << R8->elem_to_string(d);
    std::cout << "\nshape: " << shape_of(A).str() << "\n\n";

    // counting over the (2,2) chain ring Z4
    CountContext ctx{2, 2};
    Shape mu{2, 3};
    std::cout << "matrices in Z4^{2x(2,3)} of shape (1,2): "
              << matrix_shape_count(ctx, 2, mu, Shape{1, 2}) << "\n";
    std::cout << "row canonical forms of that shape:      "
              << submodule_count(ctx, mu, Shape{1, 2}) << "\n";
    std::cout << "multiplicative channel capacity: " << c_mmc(ctx, 2, mu).value
              << " q-ary symbols per use\n\n";

    // one multiplicative-channel round trip
    auto R4 = Ring::integers_mod(2, 2);
    MmcCode code(R4, 2, mu);
    Symbols message{1, 0, 1};
    ChannelConfig channel({R4, mu}, 2, 4, FixedRank{0});
    Rng rng(2024, 0);
    MmcDraw draw = mmc_transmit(channel, code.encode(message), rng);
    DecodeOutcome out = code.decode(draw.y);
    std::cout << "sent 101, decoded "
              << (out.ok() && out.symbols == message ? "101 (exact)" : "WRONG") << "\n";
    return out.ok() ? 0 : 1;
}
