use greenfun::group::{GroupStore, Limits};
use greenfun::burnside::marks_table;

fn main() {
    let s = GroupStore::new(Limits::default());
    for spec in ["C1","C2","C3","C4","C2xC2","C5","S3","C8","D8","Q8","C2xC2xC2","A4","C16","C4xC4"] {
        eprintln!("== {spec}");
        let g = s.catalog(spec).unwrap();
        let m = marks_table(&g, s.limits).unwrap();
        eprintln!("   dim {}", m.dim());
        for h in 0..m.dim() {
            let e = m.idempotent(h);
            let p = m.product(&e, &e);
            assert_eq!(p, e, "{spec} e_{h}");
        }
        eprintln!("   idempotents ok");
    }
}
