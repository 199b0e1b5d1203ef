#pragma once

// Reference values frozen from 140-digit arithmetic (mpmath: defining series
// with entire reciprocal Gamma, plain bisection for the roots). These are the
// oracle side of the tests; the library must reproduce them, never the other
// way around.

#include <array>

namespace fracstefan::test_oracle {

struct WrightSample {
    double alpha;
    double x;
    double w;  // W(-x, -alpha/2, 1)
    double m;  // M_{alpha/2}(x)
};

inline constexpr std::array<WrightSample, 25> kWrightTable = {{
    {0.25, 0.25, 0.794343684435395619275, 0.734093182058199004103},
    {0.25, 1.0, 0.394466984586819410128, 0.371653452368255008062},
    {0.25, 2.0, 0.152077372827509461023, 0.146556930121677686738},
    {0.25, 4.0, 0.0213084666467877975617, 0.0213160811265117226669},
    {0.25, 7.5, 0.000585918615590162447307, 0.000615727798039530315213},
    {0.5, 0.25, 0.812901986860499349064, 0.683589803200328478755},
    {0.5, 1.0, 0.421425328033798384331, 0.383335416570683535775},
    {0.5, 2.0, 0.162850475719883610590, 0.161251083454585855905},
    {0.5, 4.0, 0.0195458602761035691267, 0.0219899633404783586432},
    {0.5, 7.5, 0.000271854293488616803902, 0.000356026799624888646215},
    {0.75, 0.25, 0.834598628627591642966, 0.625272860345458842500},
    {0.75, 1.0, 0.449414365969277765391, 0.404552697610524545652},
    {0.75, 2.0, 0.165991016024869653334, 0.180879509510536739746},
    {0.75, 4.0, 0.0132120286529027650915, 0.0189481897468959693963},
    {0.75, 7.5, 3.41722855181297326284e-5, 6.68364862800055656379e-5},
    {0.9, 0.25, 0.849221619020353149611, 0.585079565032600722467},
    {0.9, 1.0, 0.467121563013378107623, 0.423390737761083860714},
    {0.9, 2.0, 0.162643570140547313900, 0.195912989838105709622},
    {0.9, 4.0, 0.00802341792705164086612, 0.0144700585517630888215},
    {0.9, 7.5, 2.43101624556509948916e-6, 6.84893194816349356011e-6},
    {0.999, 0.25, 0.859576243556249054059, 0.555751915449087853784},
    {0.999, 1.0, 0.479373567994144233352, 0.439215009350123025323},
    {0.999, 2.0, 0.157367733773162515069, 0.207430859267313346225},
    {0.999, 4.0, 0.00470864783058901226379, 0.0103781505892602690284},
    {0.999, 7.5, 1.18227273134697269457e-7, 4.56526759495208747066e-7},
}};

// Gamma(1 + alpha/2) / Gamma(1 - alpha/2)
inline constexpr double kGammaRatio025 = 0.864259773710753020190;
inline constexpr double kGammaRatio05 = 0.739668779797159723078;
inline constexpr double kGammaRatio075 = 0.619659734927450010860;

// function values at x = 1
inline constexpr double kF2At1Alpha05 = 0.909616463631108496031;
inline constexpr double kF1At1Alpha05 = 0.662551326811410611071;
inline constexpr double kF1At1Alpha0999 = 0.843627949618168708177;
inline constexpr double kFracErfAt1Alpha0999 = 0.520626432005855766648;
inline constexpr double kFracErfAt1Alpha099 = 0.521762714912908938153;

// true F2 at large x (for the asymptotic-branch accuracy checks)
inline constexpr double kF2At50Alpha05 = 2.33393556074;
inline constexpr double kF2At200Alpha05 = 3.68735707718;
inline constexpr double kF2At50Alpha075 = 5.82088563128;
inline constexpr double kF2At200Alpha075 = 13.3403404299;

// M_{1/8}(x) / leading-asymptotic(x) at x = 1, 2, 4, 8 (alpha = 0.25)
inline constexpr std::array<double, 4> kMainardiDecayRatioAlpha025 = {
    0.684759681424155017909, 0.797153700993497014942, 0.884130215824106946470,
    0.940223789426715357579};

// roots of F(x) = gamma_ratio(alpha) x for the all-ones problem
// (k = c = rho = l = 1, u0 = 1.5, um = 0, ui = -0.5)
inline constexpr double kXiAlpha025 = 0.838895901410845912886;
inline constexpr double kXiAlpha05 = 0.916049761964692600395;
inline constexpr double kXiAlpha075 = 1.01435210012758310953;
inline constexpr double kXiAlpha08 = 1.03713658141131817739;
inline constexpr double kXiAlpha09 = 1.08616130846933993698;
inline constexpr double kXiAlpha095 = 1.11241586923070704360;
inline constexpr double kXiAlpha099 = 1.13422639929932658005;

// classical two-phase root of the same problem
inline constexpr double kClassicalMu = 0.569892894416205923705;

// one-phase reduction, alpha = 0.5: root with the solid term removed, and
// the roots along ui -> um
inline constexpr double kXiOnePhaseAlpha05 = 1.12461140750523191280;
inline constexpr double kXiUiMinus005 = 1.10064968128579787818;
inline constexpr double kXiUiMinus0005 = 1.12218054765359569009;
inline constexpr double kXiUiMinus00005 = 1.12436797079653604674;

// Caputo power-rule spot values
inline constexpr double kTwoOverSqrtPi = 1.12837916709551257390;  // Gamma(2)/Gamma(1.5)
inline constexpr double kGamma3OverGamma25 = 1.50450555612735009853;

}  // namespace fracstefan::test_oracle
