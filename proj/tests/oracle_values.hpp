#pragma once
// Generated by tests/oracles/oracle.py; frozen reference values.
namespace oracle {
inline constexpr double kAntipeakonBlowup[] = {1.782451551751879347550703};
inline constexpr double kAntipeakonEigenvalues[] = {-0.5377075512650128414174793, 0.5377075512650128414174793};
inline constexpr double kMixedBlowup[] = {1.22291957901809778064745};
inline constexpr double kTwoPeakonAtOne[] = {0.593242250622464462877321, 2.406757749377535537122679, 1.270258350465302999961744, 3.437027424831849347028862};
inline constexpr double kPairEigenvalues[] = {0.3811515695960672506678204, 1.288042633886818326064261};
inline constexpr double kPairGammas[] = {1.432655700190254372388097, 0.216065570509873774460554};
inline constexpr double kPairCouplings[] = {1.008710906398396875279407, -0.5140945251883584312248122};
inline constexpr double kMixedPairEigenvalues[] = {-0.863264671196527823399358, 0.5687009882289597804466378};
inline constexpr double kMixedPairGammas[] = {0.07910020737274465453753169, 1.569621063327383492311119};
inline constexpr double kMixedPairCouplings[] = {0.199171063451015057166116, 2.60365509673920279247659};
inline constexpr double kTrainEigenvalues[] = {0.166651537305575649565907, 0.2500226968748810370732692, 0.5000454014757212824238742};
inline constexpr double kTrainCouplings[] = {4896.103305750064649807958, -0.9998184909204613798459551, 0.00002269790392645142110616778};
inline constexpr double kTrainShifts[] = {6.992571332884247502102094, -0.0007261022342330052358338021, -11.38665754355456482629973};
inline constexpr double kTripleEigenvalues[] = {0.2140001312915422612340296, 0.5319470706393976131050094, 2.236039004359135067659441};
inline constexpr double kTripleGammas[] = {0.8496700509607017198216914, 1.761041964544186805046537, 0.1075698129541567104920588};
inline constexpr double kTripleDelta0[] = {1.0, 3.718281828459045235360287, 2.150129267664185829872645, 1.059007819907687005121901, 0.01251723603214723002503206};
inline constexpr double kTripleDelta1[] = {1.0, 1.359140914229522617680144, 0.8503636045506863003844631, 0.04917525326107983214418107};
}  // namespace oracle
