// Generated by tests/golden_gen.py (mpmath, 30-digit working precision).
// Do not edit by hand.
#pragma once
#include <array>
#include <complex>

namespace golden {

inline constexpr std::array<double, 100> kZeroOrdinates = {
    14.134725141734694,
    21.022039638771555,
    25.010857580145689,
    30.424876125859513,
    32.93506158773919,
    37.586178158825671,
    40.918719012147495,
    43.327073280915,
    48.00515088116716,
    49.773832477672302,
    52.970321477714461,
    56.446247697063395,
    59.347044002602353,
    60.83177852460981,
    65.112544048081607,
    67.079810529494174,
    69.546401711173979,
    72.067157674481908,
    75.704690699083933,
    77.144840068874805,
    79.337375020249368,
    82.91038085408603,
    84.73549298051705,
    87.425274613125229,
    88.809111207634465,
    92.491899270558484,
    94.651344040519887,
    95.87063422824531,
    98.831194218193692,
    101.31785100573139,
    103.72553804047834,
    105.44662305232609,
    107.16861118427641,
    111.02953554316967,
    111.87465917699264,
    114.32022091545271,
    116.22668032085755,
    118.79078286597622,
    121.37012500242065,
    122.94682929355259,
    124.25681855434577,
    127.5166838795965,
    129.57870419995605,
    131.08768853093266,
    133.49773720299759,
    134.75650975337387,
    138.11604205453344,
    139.73620895212139,
    141.12370740402112,
    143.11184580762063,
    146.00098248676552,
    147.4227653425596,
    150.05352042078488,
    150.92525761224147,
    153.0246938111989,
    156.11290929423787,
    157.59759181759406,
    158.8499881714205,
    161.18896413759603,
    163.03070968718199,
    165.53706918790042,
    167.18443997817451,
    169.09451541556882,
    169.9119764794117,
    173.41153651959155,
    174.75419152336573,
    176.44143429771042,
    178.37740777609998,
    179.916484020257,
    182.20707848436646,
    184.87446784838751,
    185.59878367770747,
    187.22892258350185,
    189.41615865601694,
    192.02665636071379,
    193.0797266038457,
    195.26539667952924,
    196.87648184095832,
    198.01530967625191,
    201.26475194370379,
    202.49359451414053,
    204.18967180310455,
    205.39469720216329,
    207.90625888780621,
    209.57650971685626,
    211.69086259536531,
    213.34791935971267,
    214.54704478349142,
    216.1695385082637,
    219.06759634902138,
    220.714918839314,
    221.43070555469334,
    224.00700025460434,
    224.98332466958229,
    227.42144427967929,
    229.33741330552535,
    231.25018870049916,
    231.98723525318025,
    233.6934041789083,
    236.52422966581621,
};

inline constexpr long long kZeroCount100 = 29;  // N(100)
inline constexpr long long kZeroCount5000 = 4520;  // N(5000)
inline constexpr long long kZeroCount10000 = 10142;  // N(10000)

inline constexpr double kTheta100 = 87.97216523178722;  // Riemann-Siegel theta(100)
inline constexpr double kTheta1000 = 2034.5464280380316;
inline constexpr double kTheta14 = -1.7829487004161499;  // below the asymptotic-series domain

inline const std::complex<double> kZetaHalf1e4{-0.33937380263883446, -0.037091505973206031};  // zeta(1/2 + 1e4 i)
inline constexpr double kLogAbsZetaHalf1e4 = -1.0747159220768524;
inline constexpr double kSigmaOffLine = 0.57238241365054197;  // 1/2 + 1/log(1e6)
inline const std::complex<double> kZetaOffLine1e4{-0.1905765586074888, -0.34705456976318357};
inline const std::complex<double> kZeta3p777i{0.98500711007646995, 0.14733268481561663};
inline const std::complex<double> kZeta075p3333i{0.34937236080187749, 0.87083185858096838};
inline constexpr double kZetaHalfReal = -1.4603545088095868;  // zeta(1/2)
inline constexpr double kZeta2 = 1.6449340668482264;

inline constexpr double kHardyZ_100_25 = 2.6119499263773577;  // Z(100.25)
inline constexpr double kHardyZ_500_125 = 0.85342195250479548;  // Z(500.125)
inline constexpr double kHardyZ_1000_5 = 2.5492611355555556;  // Z(1000.5)
inline constexpr double kHardyZ_5000_25 = 0.052100543914359268;  // Z(5000.25)
inline constexpr double kHardyZ_10000_125 = 0.24002675772023711;  // Z(10000.125)
inline constexpr double kHardyZ_20000_0625 = 0.71187386306298588;  // Z(20000.0625)
inline constexpr double kGamma1 = 14.134725141734694;  // first zero ordinate, high precision

inline constexpr double kFejerPrimeSum1e3_X1e6 = 1.4992560031461818;  // sum_{p<=1000} V(log p)^2/p, Fejer X=1e6
inline constexpr double kPrimeRecipSum10 = 1.1761904761904762;  // 1/2+1/3+1/5+1/7

inline constexpr double kEulerGamma = 0.57721566490153286;
inline constexpr double kMertens = 0.26149721284764278;
inline constexpr double kPrimePowerConstant = 0.31571845205389008;  // sum_{m>=2} sum_p 1/(m p^m)
inline constexpr double kPrimePowerSquareConstant = 0.13947063961130868;  // sum_p sum_{m>=2} 1/(m^2 p^m)
inline constexpr double kC00 = 0.66589183598506729;  // c(0,0)
inline constexpr double kCdelta03 = 0.61732931912474193;  // c(y1,y2) at y1-y2 = 0.3

inline const std::complex<double> kLogderiv_t1000_X1e5{-1.1480977309971387, 3.3901854939088657};  // sum_{n<=1e5} Lambda(n) n^{-1/2-1000i} (1-log n/log X)

inline constexpr double kHInner1 = 1.0711048265836679;  // int_0^inf u/((u^2+1) sinh u) du
inline constexpr double kHInner05 = 2.5597897290720092;
inline constexpr double kHInner5 = 0.086225773754277696;
inline constexpr double kHInner20 = 0.0060958200364752444;

inline constexpr double kFejerInversionP2B1 = -0.0090319849124966778;  // (1/2pi) int_{-1}^{1} cos(y log 2) Vhat(y) dy - V(log 2), X=1e6

inline constexpr double kSi_1 = 0.94608307036718301;  // Si(1)
inline constexpr double kSi_2_76 = 1.8270060606785927;  // Si(2.76)
inline constexpr double kSi_4 = 1.7582031389490531;  // Si(4)
inline constexpr double kSi_10 = 1.658347594218874;  // Si(10)
inline constexpr double kSi_100 = 1.5622254668890563;  // Si(100)
inline constexpr double kSi_10000 = 1.5708915453859619;  // Si(10000)
inline constexpr double kCi_0_208 = -1.003798055471229;  // Ci(0.208)
inline constexpr double kCi_1 = 0.33740392290096813;  // Ci(1)
inline constexpr double kCi_2_76 = 0.19994553209041139;  // Ci(2.76)
inline constexpr double kCi_10 = -0.045456433004455373;  // Ci(10)
inline constexpr double kCi_100 = -0.0051488251426104921;  // Ci(100)

}  // namespace golden
