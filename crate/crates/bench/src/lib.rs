//! Fixed inputs shared by the benchmarks.

use zconn_core::{decode_graph6, gen_family, FamilySpec, MultiGraph};

/// Named graphs of increasing size.
pub fn sample_graphs() -> Vec<(&'static str, MultiGraph)> {
    let fam = |s| gen_family(&s).expect("valid family");
    vec![
        ("K4", fam(FamilySpec::Complete(4))),
        ("W5", fam(FamilySpec::Wheel(5))),
        ("K3,3", fam(FamilySpec::CompleteBipartite(3, 3))),
        ("K6", fam(FamilySpec::Complete(6))),
        ("G~KwW[", decode_graph6("G~KwW[").expect("valid graph6")),
        ("K4,4", fam(FamilySpec::CompleteBipartite(4, 4))),
    ]
}
