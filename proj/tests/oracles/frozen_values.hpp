// Generated by generate_frozen_values.py (mpmath, 40 digits). Do not edit.
#pragma once

#include <array>

namespace limitlaw::oracle {

struct RealLogGamma { double x; double value; };
struct ComplexLogGamma { double re; double im; double value_re; double value_im; };
struct DensityPoint { double x; double value; };

inline constexpr std::array<RealLogGamma, 27> kRealLogGamma{{
    {0.01, 4.59947987804202172251394541101},
    {0.05, 2.9688792010517308253551924451},
    {0.1, 2.25271265173420595986970164637},
    {0.25, 1.28802252469807745737061044022},
    {0.5, 0.572364942924700087071713675677},
    {0.75, 0.203280951431295371481432971862},
    {0.999, 0.00057803853289137972403634250139},
    {1.001, -0.00057639359828336954162969597611},
    {1.5, -0.120782237635245222345518445782},
    {1.999, -0.000422461800692153776106639752678},
    {2.001, 0.000423106734800163625179702944425},
    {2.5, 0.284682870472919159632494669683},
    {3.7, 1.42807232666538792187238112505},
    {7.3, 7.14789252302224903277705715443},
    {9.999, 12.7995757800774124667733813542},
    {10, 12.8018274800814696112077178746},
    {10.001, 12.8040792852518626306529100578},
    {12.5, 18.7343475119364457016341244572},
    {20.2, 39.935010915792038985937290984},
    {33.3, 82.6037235816549529283230340109},
    {50, 144.565743946344886008918443063},
    {77.7, 259.260436897597972705038555656},
    {100, 359.13420536957539877604401046},
    {123.4, 469.336097442190558444793824946},
    {150, 600.009470555327428107958698075},
    {169.9, 700.924007875271015545307372314},
    {170, 701.437263808737085346454736649},
}};

inline constexpr std::array<ComplexLogGamma, 8> kComplexLogGamma{{
    {2, 3, -2.09285175309273334956418862503, 2.30239654346686762615370761779},
    {0.5, 10, -14.7890247347442934505328871802, 13.0300200349110898508075452634},
    {2, 50, -71.7526433383872756641673032134, 147.935680738735067992959065736},
    {0.1, 0.1, 1.89899127367590022008310143037, -0.827464707773075744027651134555},
    {1.5, -7, -8.1281810705505546489058560967, -8.12681941900174551697869677131},
    {3, 200, -299.994470912060640152565464913, 863.575047834560062109248010553},
    {0.25, 40, -62.8351295188301873489566377842, 107.162739501899101366841733013},
    {25, 1, 54.7643297245786148708931316119, 3.19901992093375775029294298643},
}};

// Density of the a'=1/4 law by direct quadrature of its inverse Mellin integral.
inline constexpr std::array<DensityPoint, 6> kFkpQuarterDensity{{
    {0.25, 0.0287852701773506161080190642539},
    {0.5, 0.099652086127370689814584170001},
    {1, 0.280834028782258749977321413731},
    {1.5, 0.405664418384942001018689830742},
    {2, 0.418011932968149941747911787754},
    {3, 0.227398412539506016331217540029},
}};

inline constexpr double kHalfLogTwoPiHi = 0.9189385332046728;
inline constexpr double kHalfLogTwoPiLo = -3.8782941580672414e-17;

}  // namespace limitlaw::oracle
