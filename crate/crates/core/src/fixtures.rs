//! Small named categories used throughout the tests and the docs.

use crate::category::{LoopFreeCategory, RawCategory};

/// No objects at all.
pub fn empty() -> LoopFreeCategory {
    LoopFreeCategory::empty()
}

/// A single object `p`.
pub fn p1() -> LoopFreeCategory {
    RawCategory::new().object("p").validate().unwrap()
}

/// `x -> y`.
pub fn i1() -> LoopFreeCategory {
    RawCategory::new()
        .objects(["x", "y"])
        .arrow("xy", "x", "y")
        .validate()
        .unwrap()
}

/// `x -> y -> z` with the composite `xz`.
pub fn i2() -> LoopFreeCategory {
    RawCategory::new()
        .objects(["x", "y", "z"])
        .arrow("xy", "x", "y")
        .arrow("yz", "y", "z")
        .arrow("xz", "x", "z")
        .compose("yz", "xy", "xz")
        .validate()
        .unwrap()
}

/// The fence `a, b < c, d`, a poset model of the circle.
pub fn f4() -> LoopFreeCategory {
    RawCategory::new()
        .objects(["a", "b", "c", "d"])
        .arrow("ac", "a", "c")
        .arrow("ad", "a", "d")
        .arrow("bc", "b", "c")
        .arrow("bd", "b", "d")
        .validate()
        .unwrap()
}

/// Two parallel arrows `u, v: x -> y`; its order complex is a circle.
pub fn pa() -> LoopFreeCategory {
    RawCategory::new()
        .objects(["x", "y"])
        .arrow("u", "x", "y")
        .arrow("v", "x", "y")
        .validate()
        .unwrap()
}

/// Face poset of the boundary of a triangle: vertices `0, 1, 2` and edges
/// `01, 02, 12`.
pub fn triangle_boundary() -> LoopFreeCategory {
    let mut raw = RawCategory::new().objects(["0", "1", "2", "01", "02", "12"]);
    for e in ["01", "02", "12"] {
        for v in e.chars() {
            raw = raw.arrow(format!("{v}<{e}"), v.to_string(), e);
        }
    }
    raw.validate().unwrap()
}

/// The fence capped by two objects `n, s` above both `c` and `d`: a poset
/// model of the 2-sphere.
pub fn sphere() -> LoopFreeCategory {
    let mut raw = RawCategory::new().objects(["a", "b", "c", "d", "n", "s"]);
    for (lo, hi) in [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")] {
        raw = raw.arrow(format!("{lo}{hi}"), lo, hi);
    }
    for top in ["n", "s"] {
        for mid in ["c", "d"] {
            raw = raw.arrow(format!("{mid}{top}"), mid, top);
        }
        for bottom in ["a", "b"] {
            raw = raw.arrow(format!("{bottom}{top}"), bottom, top);
            for mid in ["c", "d"] {
                raw = raw.compose(format!("{mid}{top}"), format!("{bottom}{mid}"), format!("{bottom}{top}"));
            }
        }
    }
    raw.validate().unwrap()
}

/// `x => y -> t`: parallel arrows `u, v: x -> y` followed by `w: y -> t`,
/// with distinct composites `wu, wv`.
pub fn parallel_cone() -> LoopFreeCategory {
    RawCategory::new()
        .objects(["x", "y", "t"])
        .arrow("u", "x", "y")
        .arrow("v", "x", "y")
        .arrow("w", "y", "t")
        .arrow("wu", "x", "t")
        .arrow("wv", "x", "t")
        .compose("w", "u", "wu")
        .compose("w", "v", "wv")
        .validate()
        .unwrap()
}

/// Every fixture above.
pub fn all() -> Vec<LoopFreeCategory> {
    vec![
        empty(),
        p1(),
        i1(),
        i2(),
        f4(),
        pa(),
        triangle_boundary(),
        sphere(),
        parallel_cone(),
    ]
}
