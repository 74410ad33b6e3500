"""Published reference values for the verification tables and sweeps.

Figure coordinates are printed to four or five significant figures.
"""
from fractions import Fraction

# (a, p, sites, critical weight of the first site, C*, printed C*)
TABLE1 = (
    (10, 0.5, (3, 7), 0.5, 0.5),
    (10, 0.6, (3, 7), Fraction(4, 13), 0.1163636364),
    (10, 0.6, (2, 8), Fraction(8, 35), 0.1163636364),
    (10, 0.7, (3, 7), Fraction(9, 58), 0.0142521994),
    (10, 0.7, (3, 5, 7), Fraction(9, 58), 0.0142521994),
    (9, 0.7, (3, 6), 0.2190952202, 0.0216081357),
    (8, 0.6, (2, 6), Fraction(4, 13), 0.1649484536),
    (12, 0.6, (4, 8), Fraction(4, 13), 0.0807061791),
)

# (a, p, sites, neutral weight, C*_th, single-run estimate at N = 10**7)
TABLE2 = (
    (10, 0.5, (3, 7), 0.0, 0.5000000000, 0.5000686000),
    (10, 0.6, (3, 7), 0.0, 0.1163636364, 0.1163768231),
    (10, 0.6, (2, 8), 0.0, 0.1163636364, 0.1162992800),
    (10, 0.7, (3, 7), 0.0, 0.0142521994, 0.0142300776),
    (10, 0.7, (3, 5, 7), 0.3, 0.0142521994, 0.0142261862),
    (10, 0.7, (3, 5, 7), 0.7, 0.0142521994, 0.0142235005),
    (9, 0.7, (3, 6), 0.0, 0.0216081357, 0.0215828418),
    (8, 0.6, (2, 6), 0.0, 0.1649484536, 0.1648664308),
    (12, 0.6, (4, 8), 0.0, 0.0807061791, 0.0807359308),
)

# C(pi, gamma) on sites (3, 7), a = 10, p = 0.6; keyed by the weight on site 3
C_VS_GAMMA = {
    0.10: ((0.05, 0.05294), (0.1, 0.04549), (0.15, 0.04093), (0.2, 0.03800), (0.25, 0.03604), (0.3, 0.03471), (0.35, 0.03379), (0.4, 0.03316), (0.45, 0.03272), (0.5, 0.03241), (0.55, 0.03221), (0.6, 0.03207), (0.65, 0.03199), (0.7, 0.03193), (0.75, 0.03190), (0.8, 0.03188), (0.85, 0.03188), (0.9, 0.03187), (0.95, 0.03187)),
    0.20: ((0.05, 0.08249), (0.1, 0.07786), (0.15, 0.07495), (0.2, 0.07304), (0.25, 0.07175), (0.3, 0.07087), (0.35, 0.07025), (0.4, 0.06983), (0.45, 0.06953), (0.5, 0.06933), (0.55, 0.06919), (0.6, 0.06910), (0.65, 0.06904), (0.7, 0.06901), (0.75, 0.06898), (0.8, 0.06897), (0.85, 0.06897), (0.9, 0.06897), (0.95, 0.06897)),
    Fraction(4, 13): ((0.05, 0.1164), (0.1, 0.1164), (0.15, 0.1164), (0.2, 0.1164), (0.25, 0.1164), (0.3, 0.1164), (0.35, 0.1164), (0.4, 0.1164), (0.45, 0.1164), (0.5, 0.1164), (0.55, 0.1164), (0.6, 0.1164), (0.65, 0.1164), (0.7, 0.1164), (0.75, 0.1164), (0.8, 0.1164), (0.85, 0.1164), (0.9, 0.1164), (0.95, 0.1164)),
    0.45: ((0.05, 0.1648), (0.1, 0.1741), (0.15, 0.1806), (0.2, 0.1850), (0.25, 0.1881), (0.3, 0.1903), (0.35, 0.1918), (0.4, 0.1929), (0.45, 0.1936), (0.5, 0.1942), (0.55, 0.1945), (0.6, 0.1948), (0.65, 0.1949), (0.7, 0.1950), (0.75, 0.1951), (0.8, 0.1951), (0.85, 0.1951), (0.9, 0.1951), (0.95, 0.1951)),
    0.65: ((0.05, 0.2408), (0.1, 0.2723), (0.15, 0.2955), (0.2, 0.3126), (0.25, 0.3251), (0.3, 0.3341), (0.35, 0.3406), (0.4, 0.3452), (0.45, 0.3485), (0.5, 0.3508), (0.55, 0.3523), (0.6, 0.3534), (0.65, 0.3541), (0.7, 0.3545), (0.75, 0.3547), (0.8, 0.3549), (0.85, 0.3549), (0.9, 0.3549), (0.95, 0.3549)),
}

# q_z(gamma) under the critical distribution on (3, 7), a = 10, p = 0.6;
# gamma = 0 is the classical walk
Q_VS_Z = {
    0.0: ((1, 0.6608), (2, 0.4346), (3, 0.2839), (4, 0.1834), (5, 0.1164), (6, 0.07169), (7, 0.04191), (8, 0.02206), (9, 0.008824)),
    0.2: ((1, 0.4644), (2, 0.2524), (3, 0.1678), (4, 0.1328), (5, 0.1164), (6, 0.1054), (7, 0.09350), (8, 0.07604), (9, 0.04761)),
    0.4: ((1, 0.3508), (2, 0.1785), (3, 0.1327), (4, 0.1203), (5, 0.1164), (6, 0.1138), (7, 0.1091), (8, 0.09795), (9, 0.07005)),
    0.6: ((1, 0.2636), (2, 0.1409), (3, 0.1204), (4, 0.1170), (5, 0.1164), (6, 0.1159), (7, 0.1145), (8, 0.1091), (9, 0.08727)),
    0.8: ((1, 0.1877), (2, 0.1221), (3, 0.1168), (4, 0.1164), (5, 0.1164), (6, 0.1163), (7, 0.1162), (8, 0.1147), (9, 0.1023)),
}

# C* against p for a = 10, keyed by site pair
CSTAR_VS_P = {
    (1, 9): ((0.25, 0.9959), (0.3, 0.9857), (0.35, 0.9567), (0.4, 0.8836), (0.45, 0.7317), (0.5, 0.5000), (0.55, 0.2683), (0.6, 0.1164), (0.65, 0.04331), (0.7, 0.01425), (0.75, 0.004098)),
    (2, 8): ((0.2, 0.9990), (0.25, 0.9959), (0.3, 0.9857), (0.35, 0.9567), (0.4, 0.8836), (0.45, 0.7317), (0.5, 0.5000), (0.55, 0.2683), (0.6, 0.1164), (0.65, 0.04331), (0.7, 0.01425), (0.75, 0.004098), (0.8, 0.000976)),
    (3, 7): ((0.1, 1.0000), (0.15, 0.9998), (0.2, 0.9990), (0.25, 0.9959), (0.3, 0.9857), (0.35, 0.9567), (0.4, 0.8836), (0.45, 0.7317), (0.5, 0.5000), (0.55, 0.2683), (0.6, 0.1164), (0.65, 0.04331), (0.7, 0.01425), (0.75, 0.004098), (0.8, 0.000976), (0.85, 0.000171), (0.9, 0.0000169)),
    (4, 6): ((0.1, 1.0000), (0.15, 0.9998), (0.2, 0.9990), (0.25, 0.9959), (0.3, 0.9857), (0.35, 0.9567), (0.4, 0.8836), (0.45, 0.7317), (0.5, 0.5000), (0.55, 0.2683), (0.6, 0.1164), (0.65, 0.04331), (0.7, 0.01425), (0.75, 0.004098), (0.8, 0.000976), (0.85, 0.000171), (0.9, 0.0000169)),
}
