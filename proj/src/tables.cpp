// Generated from colour-science 0.4.6 reference datasets (10 nm, 380-780 nm).
#include "cepspec/tables.hpp"

namespace cepspec::tables {

// CIE 1931 2-degree standard observer, sampled at 10 nm.
const std::array<std::array<double, 3>, kTableCount> kCie1931Xyz = {{
    {0.0013679999999999996, 3.8999999999999986e-05, 0.006450001000000006},  // 380
    {0.004243000000000001, 0.00011999999999999996, 0.02005001},  // 390
    {0.01431000000000001, 0.0003960000000000002, 0.06785000999999995},  // 400
    {0.04351000000000001, 0.0012100000000000012, 0.20739999999999992},  // 410
    {0.13437999999999997, 0.003999999999999999, 0.6456000000000005},  // 420
    {0.2838999999999999, 0.01160000000000001, 1.385599999999999},  // 430
    {0.34828000000000003, 0.023000000000000007, 1.74706},  // 440
    {0.33619999999999955, 0.038, 1.7721099999999994},  // 450
    {0.29080000000000045, 0.06000000000000007, 1.6692000000000002},  // 460
    {0.19535999999999984, 0.09098000000000005, 1.2876400000000008},  // 470
    {0.09564000000000003, 0.13902000000000012, 0.8129500999999997},  // 480
    {0.03201000000000001, 0.2080200000000003, 0.4651799999999995},  // 490
    {0.004899999999999991, 0.3230000000000002, 0.27200000000000024},  // 500
    {0.009299999999999992, 0.5029999999999993, 0.15819999999999984},  // 510
    {0.06327, 0.7100000000000011, 0.07824998999999999},  // 520
    {0.16549999999999998, 0.862, 0.04215999999999998},  // 530
    {0.29040000000000016, 0.9540000000000008, 0.02029999999999997},  // 540
    {0.43344989999999994, 0.9949500999999998, 0.008749999000000007},  // 550
    {0.5945000000000003, 0.9949999999999998, 0.0039000000000000003},  // 560
    {0.7621000000000006, 0.9519999999999996, 0.0021000000000000016},  // 570
    {0.9162999999999994, 0.870000000000001, 0.0016500009999999988},  // 580
    {1.0262999999999995, 0.7570000000000003, 0.0010999999999999994},  // 590
    {1.0621999999999998, 0.6310000000000002, 0.0007999999999999991},  // 600
    {1.0025999999999997, 0.5029999999999999, 0.0003399999999999997},  // 610
    {0.8544498999999998, 0.38099999999999984, 0.0001899999999999999},  // 620
    {0.6423999999999992, 0.2650000000000002, 4.999999000000001e-05},  // 630
    {0.4479000000000001, 0.17499999999999988, 2.0000000000000005e-05},  // 640
    {0.28349999999999986, 0.10699999999999996, -1.9058241313221758e-21},  // 650
    {0.16489999999999996, 0.060999999999999985, 0.0},  // 660
    {0.08739999999999999, 0.032000000000000035, 0.0},  // 670
    {0.04676999999999999, 0.016999999999999998, 0.0},  // 680
    {0.02269999999999998, 0.008209999999999997, 0.0},  // 690
    {0.011359160000000002, 0.004101999999999994, 0.0},  // 700
    {0.005790345999999993, 0.002090999999999997, 0.0},  // 710
    {0.0028993270000000015, 0.0010469999999999998, 0.0},  // 720
    {0.001439971, 0.0005200000000000003, 0.0},  // 730
    {0.0006900785999999999, 0.00024920000000000004, 0.0},  // 740
    {0.0003323010999999997, 0.00011999999999999994, 0.0},  // 750
    {0.00016615049999999985, 5.9999999999999954e-05, 0.0},  // 760
    {8.307527000000009e-05, 2.9999999999999997e-05, 0.0},  // 770
    {4.1509940000000044e-05, 1.4990000000000004e-05, 0.0},  // 780
}};

// CIE standard illuminant D65, relative SPD.
const std::array<double, kTableCount> kD65 = {{
    49.9755,  // 380
    54.6482,  // 390
    82.7549,  // 400
    91.486,  // 410
    93.4318,  // 420
    86.6823,  // 430
    104.865,  // 440
    117.008,  // 450
    117.812,  // 460
    114.861,  // 470
    115.923,  // 480
    108.811,  // 490
    109.354,  // 500
    107.802,  // 510
    104.79,  // 520
    107.689,  // 530
    104.405,  // 540
    104.046,  // 550
    100.0,  // 560
    96.3342,  // 570
    95.788,  // 580
    88.6856,  // 590
    90.0062,  // 600
    89.5991,  // 610
    87.6987,  // 620
    83.2886,  // 630
    83.6992,  // 640
    80.0268,  // 650
    80.2146,  // 660
    82.2778,  // 670
    78.2842,  // 680
    69.7213,  // 690
    71.6091,  // 700
    74.349,  // 710
    61.604,  // 720
    69.8856,  // 730
    75.087,  // 740
    63.5927,  // 750
    46.4182,  // 760
    66.8054,  // 770
    63.3828,  // 780
}};

// X-Rite ColorChecker Classic, BabelColor average reflectances. The source
// data ends at 730 nm; longer wavelengths repeat the 730 nm value.
const std::array<std::string_view, kColorCheckerPatches> kColorCheckerNames = {{
    "dark skin",
    "light skin",
    "blue sky",
    "foliage",
    "blue flower",
    "bluish green",
    "orange",
    "purplish blue",
    "moderate red",
    "purple",
    "yellow green",
    "orange yellow",
    "blue",
    "green",
    "red",
    "yellow",
    "magenta",
    "cyan",
    "white 9.5 (.05 D)",
    "neutral 8 (.23 D)",
    "neutral 6.5 (.44 D)",
    "neutral 5 (.70 D)",
    "neutral 3.5 (1.05 D)",
    "black 2 (1.5 D)",
}};

const std::array<std::array<double, kTableCount>, kColorCheckerPatches> kColorChecker = {{
    {0.0550, 0.0580, 0.0610, 0.0620, 0.0620, 0.0620, 0.0620, 0.0620, 0.0620, 0.0620, 0.0620, 0.0630, 0.0650, 0.0700, 0.0760, 0.0790, 0.0810, 0.0840, 0.0910, 0.1030, 0.1190, 0.1340, 0.1430, 0.1470, 0.1510, 0.1580, 0.1680, 0.1790, 0.1880, 0.1900, 0.1860, 0.1810, 0.1820, 0.1870, 0.1960, 0.2090, 0.2090, 0.2090, 0.2090, 0.2090, 0.2090},
    {0.1170, 0.1430, 0.1750, 0.1910, 0.1960, 0.1990, 0.2040, 0.2130, 0.2280, 0.2510, 0.2800, 0.3090, 0.3290, 0.3330, 0.3150, 0.2860, 0.2730, 0.2760, 0.2770, 0.2890, 0.3390, 0.4200, 0.4880, 0.5250, 0.5460, 0.5620, 0.5780, 0.5950, 0.6120, 0.6250, 0.6380, 0.6560, 0.6780, 0.7000, 0.7170, 0.7340, 0.7340, 0.7340, 0.7340, 0.7340, 0.7340},
    {0.1300, 0.1770, 0.2510, 0.3060, 0.3240, 0.3300, 0.3330, 0.3310, 0.3230, 0.3110, 0.2980, 0.2850, 0.2690, 0.2500, 0.2310, 0.2140, 0.1990, 0.1850, 0.1690, 0.1570, 0.1490, 0.1450, 0.1420, 0.1410, 0.1410, 0.1410, 0.1430, 0.1470, 0.1520, 0.1540, 0.1500, 0.1440, 0.1360, 0.1320, 0.1350, 0.1470, 0.1470, 0.1470, 0.1470, 0.1470, 0.1470},
    {0.0510, 0.0540, 0.0560, 0.0570, 0.0580, 0.0590, 0.0600, 0.0610, 0.0620, 0.0630, 0.0650, 0.0670, 0.0750, 0.1010, 0.1450, 0.1780, 0.1840, 0.1700, 0.1490, 0.1330, 0.1220, 0.1150, 0.1090, 0.1050, 0.1040, 0.1060, 0.1090, 0.1120, 0.1140, 0.1140, 0.1120, 0.1120, 0.1150, 0.1200, 0.1250, 0.1300, 0.1300, 0.1300, 0.1300, 0.1300, 0.1300},
    {0.1440, 0.1980, 0.2940, 0.3750, 0.4080, 0.4210, 0.4260, 0.4260, 0.4190, 0.4030, 0.3790, 0.3460, 0.3110, 0.2810, 0.2540, 0.2290, 0.2140, 0.2080, 0.2020, 0.1940, 0.1930, 0.2000, 0.2140, 0.2300, 0.2410, 0.2540, 0.2790, 0.3130, 0.3480, 0.3660, 0.3660, 0.3590, 0.3580, 0.3650, 0.3770, 0.3980, 0.3980, 0.3980, 0.3980, 0.3980, 0.3980},
    {0.1360, 0.1790, 0.2470, 0.2970, 0.3200, 0.3370, 0.3550, 0.3810, 0.4190, 0.4660, 0.5100, 0.5460, 0.5670, 0.5740, 0.5690, 0.5510, 0.5240, 0.4880, 0.4450, 0.4000, 0.3500, 0.2990, 0.2520, 0.2210, 0.2040, 0.1960, 0.1910, 0.1880, 0.1910, 0.1990, 0.2120, 0.2230, 0.2320, 0.2330, 0.2290, 0.2290, 0.2290, 0.2290, 0.2290, 0.2290, 0.2290},
    {0.0540, 0.0540, 0.0530, 0.0540, 0.0540, 0.0550, 0.0550, 0.0550, 0.0560, 0.0570, 0.0580, 0.0610, 0.0680, 0.0890, 0.1250, 0.1540, 0.1740, 0.1990, 0.2480, 0.3350, 0.4440, 0.5380, 0.5870, 0.5950, 0.5910, 0.5870, 0.5840, 0.5840, 0.5900, 0.6030, 0.6200, 0.6390, 0.6550, 0.6630, 0.6630, 0.6670, 0.6670, 0.6670, 0.6670, 0.6670, 0.6670},
    {0.1220, 0.1640, 0.2290, 0.2860, 0.3270, 0.3610, 0.3880, 0.4000, 0.3920, 0.3620, 0.3160, 0.2600, 0.2090, 0.1680, 0.1380, 0.1170, 0.1040, 0.0960, 0.0900, 0.0860, 0.0840, 0.0840, 0.0840, 0.0840, 0.0840, 0.0850, 0.0900, 0.0980, 0.1090, 0.1230, 0.1430, 0.1690, 0.2050, 0.2440, 0.2870, 0.3320, 0.3320, 0.3320, 0.3320, 0.3320, 0.3320},
    {0.0960, 0.1150, 0.1310, 0.1350, 0.1330, 0.1320, 0.1300, 0.1280, 0.1250, 0.1200, 0.1150, 0.1100, 0.1050, 0.1000, 0.0950, 0.0930, 0.0920, 0.0930, 0.0960, 0.1080, 0.1560, 0.2650, 0.3990, 0.5000, 0.5560, 0.5790, 0.5880, 0.5910, 0.5930, 0.5940, 0.5980, 0.6020, 0.6070, 0.6090, 0.6090, 0.6100, 0.6100, 0.6100, 0.6100, 0.6100, 0.6100},
    {0.0920, 0.1160, 0.1460, 0.1690, 0.1780, 0.1730, 0.1580, 0.1390, 0.1190, 0.1010, 0.0870, 0.0750, 0.0660, 0.0600, 0.0560, 0.0530, 0.0510, 0.0510, 0.0520, 0.0520, 0.0510, 0.0520, 0.0580, 0.0730, 0.0960, 0.1190, 0.1410, 0.1660, 0.1940, 0.2270, 0.2650, 0.3090, 0.3550, 0.3960, 0.4360, 0.4780, 0.4780, 0.4780, 0.4780, 0.4780, 0.4780},
    {0.0610, 0.0610, 0.0620, 0.0630, 0.0640, 0.0660, 0.0690, 0.0750, 0.0850, 0.1050, 0.1390, 0.1920, 0.2710, 0.3760, 0.4760, 0.5310, 0.5490, 0.5460, 0.5280, 0.5040, 0.4710, 0.4280, 0.3810, 0.3470, 0.3270, 0.3180, 0.3120, 0.3100, 0.3140, 0.3270, 0.3450, 0.3630, 0.3760, 0.3810, 0.3780, 0.3790, 0.3790, 0.3790, 0.3790, 0.3790, 0.3790},
    {0.0630, 0.0630, 0.0630, 0.0640, 0.0640, 0.0640, 0.0650, 0.0660, 0.0670, 0.0680, 0.0710, 0.0760, 0.0870, 0.1250, 0.2060, 0.3050, 0.3830, 0.4310, 0.4690, 0.5180, 0.5680, 0.6070, 0.6280, 0.6370, 0.6400, 0.6420, 0.6450, 0.6480, 0.6510, 0.6530, 0.6570, 0.6640, 0.6730, 0.6800, 0.6840, 0.6880, 0.6880, 0.6880, 0.6880, 0.6880, 0.6880},
    {0.0660, 0.0790, 0.1020, 0.1460, 0.2000, 0.2440, 0.2820, 0.3090, 0.3080, 0.2780, 0.2310, 0.1780, 0.1300, 0.0940, 0.0700, 0.0540, 0.0460, 0.0420, 0.0390, 0.0380, 0.0380, 0.0380, 0.0380, 0.0390, 0.0390, 0.0400, 0.0410, 0.0420, 0.0440, 0.0450, 0.0460, 0.0460, 0.0480, 0.0520, 0.0570, 0.0650, 0.0650, 0.0650, 0.0650, 0.0650, 0.0650},
    {0.0520, 0.0530, 0.0540, 0.0550, 0.0570, 0.0590, 0.0610, 0.0660, 0.0750, 0.0930, 0.1250, 0.1780, 0.2460, 0.3070, 0.3370, 0.3340, 0.3170, 0.2930, 0.2620, 0.2300, 0.1980, 0.1650, 0.1350, 0.1150, 0.1040, 0.0980, 0.0940, 0.0920, 0.0930, 0.0970, 0.1020, 0.1080, 0.1130, 0.1150, 0.1140, 0.1140, 0.1140, 0.1140, 0.1140, 0.1140, 0.1140},
    {0.0500, 0.0490, 0.0480, 0.0470, 0.0470, 0.0470, 0.0470, 0.0470, 0.0460, 0.0450, 0.0440, 0.0440, 0.0450, 0.0460, 0.0470, 0.0480, 0.0490, 0.0500, 0.0540, 0.0600, 0.0720, 0.1040, 0.1780, 0.3120, 0.4670, 0.5810, 0.6440, 0.6750, 0.6900, 0.6980, 0.7060, 0.7150, 0.7240, 0.7300, 0.7340, 0.7380, 0.7380, 0.7380, 0.7380, 0.7380, 0.7380},
    {0.0580, 0.0540, 0.0520, 0.0520, 0.0530, 0.0540, 0.0560, 0.0590, 0.0670, 0.0810, 0.1070, 0.1520, 0.2250, 0.3360, 0.4620, 0.5590, 0.6160, 0.6500, 0.6720, 0.6940, 0.7100, 0.7230, 0.7310, 0.7390, 0.7460, 0.7520, 0.7580, 0.7640, 0.7690, 0.7710, 0.7760, 0.7820, 0.7900, 0.7960, 0.7990, 0.8040, 0.8040, 0.8040, 0.8040, 0.8040, 0.8040},
    {0.1450, 0.1950, 0.2830, 0.3460, 0.3620, 0.3540, 0.3340, 0.3060, 0.2760, 0.2480, 0.2180, 0.1900, 0.1680, 0.1490, 0.1270, 0.1070, 0.1000, 0.1020, 0.1040, 0.1090, 0.1370, 0.2000, 0.2900, 0.4000, 0.5160, 0.6150, 0.6870, 0.7320, 0.7600, 0.7740, 0.7830, 0.7930, 0.8030, 0.8120, 0.8170, 0.8250, 0.8250, 0.8250, 0.8250, 0.8250, 0.8250},
    {0.1080, 0.1410, 0.1920, 0.2360, 0.2610, 0.2860, 0.3170, 0.3530, 0.3900, 0.4260, 0.4460, 0.4440, 0.4230, 0.3850, 0.3370, 0.2830, 0.2310, 0.1850, 0.1460, 0.1180, 0.1010, 0.0900, 0.0820, 0.0760, 0.0740, 0.0730, 0.0730, 0.0740, 0.0760, 0.0770, 0.0760, 0.0750, 0.0730, 0.0720, 0.0740, 0.0790, 0.0790, 0.0790, 0.0790, 0.0790, 0.0790},
    {0.1890, 0.2550, 0.4230, 0.6600, 0.8110, 0.8620, 0.8770, 0.8840, 0.8910, 0.8960, 0.8990, 0.9040, 0.9070, 0.9090, 0.9110, 0.9100, 0.9110, 0.9140, 0.9130, 0.9160, 0.9150, 0.9160, 0.9140, 0.9150, 0.9180, 0.9190, 0.9210, 0.9230, 0.9240, 0.9220, 0.9220, 0.9250, 0.9270, 0.9300, 0.9300, 0.9330, 0.9330, 0.9330, 0.9330, 0.9330, 0.9330},
    {0.1710, 0.2320, 0.3650, 0.5070, 0.5670, 0.5830, 0.5880, 0.5900, 0.5910, 0.5900, 0.5880, 0.5880, 0.5890, 0.5890, 0.5910, 0.5900, 0.5900, 0.5900, 0.5890, 0.5910, 0.5900, 0.5900, 0.5870, 0.5850, 0.5830, 0.5800, 0.5780, 0.5760, 0.5740, 0.5720, 0.5710, 0.5690, 0.5680, 0.5680, 0.5660, 0.5660, 0.5660, 0.5660, 0.5660, 0.5660, 0.5660},
    {0.1440, 0.1920, 0.2720, 0.3310, 0.3500, 0.3570, 0.3610, 0.3630, 0.3630, 0.3610, 0.3590, 0.3580, 0.3580, 0.3590, 0.3600, 0.3600, 0.3610, 0.3610, 0.3600, 0.3620, 0.3620, 0.3610, 0.3590, 0.3580, 0.3550, 0.3520, 0.3500, 0.3480, 0.3450, 0.3430, 0.3400, 0.3380, 0.3350, 0.3340, 0.3320, 0.3310, 0.3310, 0.3310, 0.3310, 0.3310, 0.3310},
    {0.1050, 0.1310, 0.1630, 0.1800, 0.1860, 0.1900, 0.1930, 0.1940, 0.1940, 0.1920, 0.1910, 0.1910, 0.1910, 0.1920, 0.1920, 0.1920, 0.1920, 0.1920, 0.1920, 0.1930, 0.1920, 0.1920, 0.1910, 0.1890, 0.1880, 0.1860, 0.1840, 0.1820, 0.1810, 0.1790, 0.1780, 0.1760, 0.1740, 0.1730, 0.1720, 0.1710, 0.1710, 0.1710, 0.1710, 0.1710, 0.1710},
    {0.0680, 0.0770, 0.0840, 0.0870, 0.0890, 0.0900, 0.0920, 0.0920, 0.0910, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0900, 0.0890, 0.0890, 0.0880, 0.0870, 0.0860, 0.0860, 0.0850, 0.0840, 0.0840, 0.0830, 0.0830, 0.0820, 0.0810, 0.0810, 0.0810, 0.0810, 0.0810, 0.0810, 0.0810, 0.0810},
    {0.0310, 0.0320, 0.0320, 0.0330, 0.0330, 0.0330, 0.0330, 0.0330, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0320, 0.0330, 0.0330, 0.0330, 0.0330, 0.0330, 0.0330},
}};

}  // namespace cepspec::tables
