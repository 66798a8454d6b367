//! Published height statistics for small primes: `(l, h2, c_l, r_l)` with
//! the two ratios in hundredths.

pub const PUBLISHED: &[(u64, u32, i32, i32)] = &[
    (2, 48, 1248, 133),
    (3, 71, 981, 150),
    (5, 157, 1211, 127),
    (7, 220, 1011, 136),
    (11, 421, 1214, 122),
    (13, 496, 1106, 126),
    (17, 705, 1175, 122),
    (19, 796, 1137, 123),
    (23, 1025, 1208, 119),
    (29, 1348, 1202, 119),
    (31, 1440, 1159, 120),
    (37, 1767, 1144, 120),
    (41, 2012, 1173, 118),
    (43, 2122, 1164, 119),
    (47, 2376, 1194, 117),
    (53, 2739, 1200, 117),
    (59, 3104, 1200, 116),
    (61, 3213, 1184, 117),
    (67, 3581, 1182, 117),
    (71, 3841, 1192, 116),
    (73, 3952, 1178, 117),
    (79, 4328, 1176, 116),
    (83, 4591, 1183, 116),
    (89, 4968, 1176, 116),
    (97, 5476, 1168, 116),
    (101, 5751, 1178, 116),
    (103, 5881, 1177, 116),
    (107, 6158, 1185, 115),
    (109, 6282, 1180, 116),
    (113, 6561, 1188, 115),
    (127, 7500, 1187, 115),
    (131, 7783, 1193, 115),
    (137, 8183, 1188, 115),
    (139, 8318, 1187, 115),
    (149, 9009, 1189, 115),
    (151, 9145, 1188, 115),
    (157, 9561, 1187, 115),
    (163, 9979, 1187, 114),
    (167, 10272, 1193, 114),
    (173, 10690, 1191, 114),
    (179, 11111, 1190, 114),
    (181, 11238, 1185, 114),
    (191, 11951, 1186, 114),
    (193, 12089, 1184, 114),
    (197, 12369, 1182, 114),
    (199, 12509, 1181, 114),
];

/// The published row for `l`, if any.
pub fn published(l: u64) -> Option<(u32, i32, i32)> {
    PUBLISHED.iter().find(|r| r.0 == l).map(|r| (r.1, r.2, r.3))
}
