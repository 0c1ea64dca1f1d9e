// Generated by tests/oracles/compute_oracles.py (mpmath, 30 digits). Frozen.
#pragma once

namespace oracle {

inline constexpr double kGaussianPlaneIntegral = 3.1415926535897932385;
inline constexpr double kDiskSecondMoment = 1.5707963267948966192;
inline constexpr double kFsArea = 3.1415926535897932385;
inline constexpr double kP1MomentU1D4 = 0.52359877559829887308;

// Fock Gram diagonal at a = 1.25 (t = 0.5), k = 0..16
inline constexpr double kFockGramA125[17] = {
    2.5132741228718345908,
    2.0106192982974676726,
    3.2169908772759482762,
    7.7207781054622758628,
    24.706489937479282761,
    98.825959749917131044,
    474.36460679960222901,
    2656.4417980777724825,
    17001.227507697743888,
    122408.83805542375599,
    979270.70444339004794,
    8617582.1991018324219,
    82728789.11137759125,
    860379406.758326949,
    9636249355.6932618288,
    115634992268.31914195,
    1480127901034.4850169,
};

// l = 4 sections on the chart, k = 0..2
inline constexpr double kP1GramL4[3] = {
    1.0471975511965977462,
    0.52359877559829887308,
    1.0471975511965977462,
};

inline constexpr double kHormanderM1Sq = 0.24333877040799421966;
inline constexpr double kHormanderF1Sq = 0.62831853071795864769;
inline constexpr double kHormanderGapPerEps2 = 0.38497976030996442803;

inline constexpr double kSecondFormFockT05 = 0.40212385965949353452;
inline constexpr double kFockKernelT1 = 0.63661977236758134308;

}  // namespace oracle
