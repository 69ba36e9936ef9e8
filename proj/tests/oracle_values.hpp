#pragma once

// Reference values produced by tests/oracles/compute_oracles.py (50-digit
// mpmath Remez, scipy grid linear programs). Regenerate with that script.

namespace oracle {

inline constexpr double kEntropyTwoThirds = 0.63651416829481282;  // H(2/3, 1/3)
inline constexpr double kPluginThreeTwo = 0.67301166700925644;    // plug-in of counts (3,2)
inline constexpr double kMillerMadowThreeTwo = 0.77301166700925644;
inline constexpr double kTwoPointKl = 0.0024254696569254023;  // k = 101, n = 100

// E_L(phi, [0, 1])
inline constexpr double kPhiErr1 = 0.18393972058572116;  // 1/(2e); a_1 = 0
inline constexpr double kPhiErr6 = 0.0062442524025562732;
inline constexpr double kPhiErr10 = 0.002261171593711356;
inline constexpr double kPhiErr18 = 0.00069952409415447303;
inline constexpr double kPhiErr20 = 0.00056672754481463658;
inline constexpr double kPhiErr30 = 0.00025199814770712003;
inline constexpr double kPhiErr40 = 0.00014177248234620116;
// Grid linear program, 10^5 points, degree 1.
inline constexpr double kPhiErr1Lp = 0.18393972055579504;

// E_L(log, [eta, 1])
inline constexpr double kLogErr1Eta01 = 0.30951746009935655;
inline constexpr double kLogErr1Eta01Lp = 0.30951746008494723;
inline constexpr double kLogErr10Eta001 = 0.047145288867431572;
inline constexpr double kLogErr10Eta001Lp = 0.047145288730786111;
inline constexpr double kLogErr2Eta001 = 0.63878988821546586;      // scan L = 10, c = 0.2
inline constexpr double kLogErr4Eta00025 = 0.65951703202399055;    // scan L = 20
inline constexpr double kLogErr8Eta0000625 = 0.66508133603518828;  // scan L = 40

// Moment-matched pair, L = 1, eta = 0.1.
inline constexpr double kPair1Separation = 0.6190349201987131;
inline constexpr double kPair1MiddleAtom = 0.39086503371292664;
inline constexpr double kPair1WeightLeft = 0.6768166292;
inline constexpr double kPair1WeightRight = 0.3231833708;
inline constexpr double kPair1Moment2Gap = 0.17717606250481203;
// Grid LP over pairs of measures on [0.1, 1] matching one moment.
inline constexpr double kPair1LpSeparation = 0.61903486309721723;

// Moment-matched pair, L = 10, eta = 0.01.
inline constexpr double kPair10Separation = 0.094290577734863143;
inline constexpr double kPair10Moment11Gap = 3.5870690260892382e-7;

}  // namespace oracle
