mod common;

use std::sync::Arc;

use omlkit::catalog::{benzene_data, gen_benzene, gen_boolean, gen_chain2, gen_mo, gen_one, gen_product, CatalogId};
use omlkit::format::{parse_oml, write_oml};
use omlkit::oml::{LatticeData, Oml, OmlError};
use omlkit::verify::{downset_lemma, oml_report, sasaki_facts};
use proptest::prelude::*;

use common::{isomorphism, Naive};

fn corpus() -> Vec<(Naive, Oml)> {
    vec![
        (Naive::new(1, |_, _| true, |_| 0), gen_one()),
        (common::chain2(), gen_chain2()),
        (common::boolean(2), gen_boolean(2).unwrap()),
        (common::boolean(3), gen_boolean(3).unwrap()),
        (common::mo(2), gen_mo(2).unwrap()),
        (common::mo(3), gen_mo(3).unwrap()),
        (common::product(&common::mo(2), &common::chain2()), gen_product(&gen_mo(2).unwrap(), &gen_chain2()).unwrap()),
    ]
}

#[test]
fn catalog_matches_oracle_lattices() {
    for (naive, l) in corpus() {
        let phi = isomorphism(&naive, &l).unwrap_or_else(|| panic!("{} differs from its oracle", l.name()));
        for x in 0..naive.n {
            for y in 0..naive.n {
                assert_eq!(l.meet(phi[x], phi[y]), phi[naive.meet(x, y)], "{} meet", l.name());
                assert_eq!(l.join(phi[x], phi[y]), phi[naive.join(x, y)], "{} join", l.name());
            }
        }
    }
}

#[test]
fn sasaki_tables_match_oracle() {
    for (naive, l) in corpus() {
        let phi = isomorphism(&naive, &l).unwrap();
        for a in 0..naive.n {
            for y in 0..naive.n {
                assert_eq!(l.sasaki(phi[a], phi[y]), phi[naive.sasaki(a, y)]);
            }
        }
    }
}

#[test]
fn sasaki_examples() {
    let mo2 = gen_mo(2).unwrap();
    let i = |s| mo2.index_of(s).unwrap();
    assert_eq!(mo2.sasaki(i("a"), i("b")), i("a"));
    assert_eq!(mo2.sasaki_projection(mo2.top()), mo2.elements().collect::<Vec<_>>());
    for (_, l) in corpus() {
        for a in l.elements() {
            for y in l.elements().filter(|&y| l.leq(y, l.perp(a))) {
                assert_eq!(l.sasaki(a, y), l.bottom());
            }
        }
    }
}

#[test]
fn sasaki_facts_on_corpus() {
    for (_, l) in corpus() {
        let r = sasaki_facts(&Arc::new(l));
        assert!(r.all_passed(), "{r}");
        assert_eq!(r.checks().count(), 6);
    }
}

#[test]
fn downsets() {
    let mo2 = gen_mo(2).unwrap();
    let a = mo2.index_of("a").unwrap();
    let down = mo2.downset(a).unwrap();
    assert!(isomorphism(&common::chain2(), &down).is_some());
    assert_eq!(down.perp(down.top()), down.bottom());
    assert_eq!(mo2.downset(mo2.bottom()).unwrap().len(), 1);
    for (naive, l) in corpus() {
        let whole = l.downset(l.top()).unwrap();
        assert!(isomorphism(&naive, &whole).is_some());
        let r = downset_lemma(&Arc::new(l));
        assert!(r.all_passed(), "{r}");
    }
}

#[test]
fn ortho_examples() {
    let mo2 = gen_mo(2).unwrap();
    let i = |s| mo2.index_of(s).unwrap();
    assert!(!mo2.ortho(i("a"), i("b")));
    assert!(mo2.ortho(i("a"), i("a'")));
    assert!(!mo2.ortho(mo2.top(), mo2.top()));
    for y in mo2.elements() {
        assert!(mo2.ortho(mo2.bottom(), y));
    }
}

#[test]
fn three_conditions_agree() {
    for (_, l) in corpus() {
        assert_eq!(l.orthomodular_three_ways().as_bools(), (true, true, true), "{}", l.name());
    }
    let bz = gen_benzene();
    let v = bz.orthomodular_three_ways();
    assert_eq!(v.as_bools(), (false, false, false));
    let (x, y) = v.join_form.unwrap();
    assert_eq!((bz.label(x), bz.label(y)), ("x", "y"));
    assert_eq!(common::benzene().orthomodular_witness(), Some((1, 2)));
}

#[test]
fn benzene_rejected_as_oml() {
    assert_eq!(Oml::build(&benzene_data()).err(), Some(OmlError::NotOrthomodular { x: 1, y: 2 }));
    let (r, oml) = oml_report(&benzene_data(), 64).unwrap();
    assert!(oml.is_none());
    assert_eq!(r.passed(), 4);
    assert_eq!(r.get("oml", "orthomodular_cancellation"), Some(Some("x y")));
}

#[test]
fn structural_failures_are_reported() {
    let mut bowtie = LatticeData {
        name: "bowtie".into(),
        labels: ["0", "a", "b", "c", "d", "1"].map(String::from).to_vec(),
        leq: vec![(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)],
        perp: vec![(0, 5), (1, 4), (2, 3)],
        bottom: 0,
        top: 5,
    };
    let (r, oml) = oml_report(&bowtie, 64).unwrap();
    assert!(oml.is_none());
    assert!(r.get("oml", "lattice").unwrap().is_some(), "{r}");
    bowtie.leq.push((5, 0));
    let (r, _) = oml_report(&bowtie, 64).unwrap();
    assert!(r.get("oml", "poset").unwrap().is_some());
}

#[test]
fn size_cap() {
    let data = CatalogId::Boolean(3).data().unwrap();
    assert!(matches!(Oml::build_with_cap(&data, 7), Err(OmlError::SizeCap { n: 8, cap: 7 })));
    assert!(oml_report(&data, 7).is_err());
}

#[test]
fn text_round_trip() {
    for (_, l) in corpus() {
        let text = write_oml(&l);
        let back = Oml::build(&parse_oml(&text).unwrap()).unwrap();
        assert_eq!(write_oml(&back), text);
        assert_eq!(back.labels(), l.labels());
        for x in l.elements() {
            for y in l.elements() {
                assert_eq!(back.leq(x, y), l.leq(x, y));
            }
        }
    }
}

proptest! {
    #[test]
    fn ortho_is_symmetric(k in 0usize..=4, m in 1usize..=5) {
        for l in [gen_boolean(k).unwrap(), gen_mo(m).unwrap()] {
            for x in l.elements() {
                for y in l.elements() {
                    prop_assert_eq!(l.ortho(x, y), l.ortho(y, x));
                }
            }
        }
    }

    #[test]
    fn join_is_de_morgan_dual(m in 1usize..=8) {
        let l = gen_mo(m).unwrap();
        for x in l.elements() {
            for y in l.elements() {
                prop_assert_eq!(l.join(x, y), l.perp(l.meet(l.perp(x), l.perp(y))));
            }
        }
    }

    #[test]
    fn sasaki_idempotent_on_products(k in 0usize..=2, m in 1usize..=3) {
        let l = gen_product(&gen_boolean(k).unwrap(), &gen_mo(m).unwrap()).unwrap();
        for a in l.elements() {
            for y in l.elements() {
                let p = l.sasaki(a, y);
                prop_assert_eq!(l.sasaki(a, p), p);
            }
        }
    }
}
