#pragma once

namespace divmet {

// Dispatch ids for the scanners' machine-word evaluation path. A catalog
// entry with scan_id >= 0 can be evaluated from a small factorization in
// u64 rational arithmetic; entries without one only have the exact path.
enum ScanId : int {
    kScanNone = -1,
    kScanZero,
    kScanOne,
    kScanIdentity,
    kScanRecip,
    kScanXMinus1,
    kScanOneMinusEps,
    kScanBigOmega,
    kScanOmega,
    kScanBigUpsilon,
    kScanUpsilon,
    kScanLd,
    kScanDeriv,
    kScanNd,
    kScanSigma,
    kScanPhi,
    kScanPillai,
    kScanMu2,
    kScanMu2OverX,
    kScanEps,
    kScanChi,
    kScanChiOverX,
    kScanNdOverX,
    kScanNdOverX2,
    kScanSigmaOverX,
    kScanSigmaOverX2,
    kScanPhiOverX,
    kScanPhiOverX2,
    kScanXOverNd,
    kScanX2OverNd,
    kScanXOverSigma,
    kScanX2OverSigma,
    kScanXOverPhi,
    kScanX2OverPhi,
    kScanRecipNd,
    kScanRecipSigma,
    kScanRecipPhi,
    kScanRecipPillai,
    kScanPillaiNorm,
    kScanXNdOverPillai,
    kScanHalfPowBigOmega,
};

}  // namespace divmet
