use latticelab::casebook::{self, PolarizationRoot, TableId};
use latticelab::nikulin;
use latticelab::Error;

#[test]
fn fixed_lattice_signatures_match_rank() {
    for table in [TableId::Hm15, TableId::K3Max11] {
        for rec in casebook::load_table(table).unwrap() {
            let sig = rec.q_k.to_form().signature_mod8() as usize;
            assert_eq!(sig, rec.rank_k % 8, "{} row {}", table.name(), rec.row);
            assert_eq!(rec.q_s().signature_mod8() as usize, (8 - rec.rank_k % 8) % 8);
        }
    }
}

#[test]
fn rejects_malformed_tables() {
    let bad = r#"{"table": "HM15", "version": 1, "rows": [{"row": 1, "group": "G", "order": 2, "rank_K": 4, "qK": "3^+7x"}]}"#;
    assert!(matches!(casebook::parse_table(TableId::Hm15, bad), Err(Error::DataFormat(_))));
    let wrong = r#"{"table": "K3MAX11", "version": 1, "rows": []}"#;
    assert!(matches!(casebook::parse_table(TableId::Hm15, wrong), Err(Error::DataFormat(_))));
}

#[test]
fn report_does_not_depend_on_threads() {
    let one = casebook::full_report(TableId::Hm15, PolarizationRoot::E6, 1).unwrap();
    let four = casebook::full_report(TableId::Hm15, PolarizationRoot::E6, 4).unwrap();
    assert_eq!(casebook::report_json(&one), casebook::report_json(&four));
    assert_eq!(casebook::render_table(&one), casebook::render_table(&four));
}

#[test]
fn passing_verdicts_carry_checkable_witnesses() {
    for (table, root) in [
        (TableId::Hm15, PolarizationRoot::E6),
        (TableId::K3Max11, PolarizationRoot::E7),
        (TableId::K3Max11, PolarizationRoot::D7),
        (TableId::K3Max11, PolarizationRoot::E6A1),
    ] {
        for v in casebook::full_report(table, root, 2).unwrap() {
            for w in v.witnesses.iter().filter(|w| w.passes()) {
                let comp = w.embedding.complement.as_ref().unwrap();
                assert!(nikulin::even_lattice_exists(comp).exists);
                assert!(comp.form.is_isomorphic(&w.witness.form.negate()));
            }
            for c in &v.classes {
                let q_t = latticelab::discriminant_form(&c.t.lattice()).unwrap();
                assert!(q_t.negate().is_isomorphic(&v.witnesses[c.witness].witness.form));
                let bound = casebook::phi_order_bound(v.record.rank_s()).unwrap();
                assert!(bound.contains(&(c.n_bar.unwrap() as u64)));
            }
        }
    }
}

#[test]
fn embedding_count_needs_the_surjectivity_flag() {
    let rec = casebook::record(TableId::Hm15, 2).unwrap();
    let v = casebook::polarized_criterion(&rec, PolarizationRoot::E6).unwrap();
    let t = latticelab::rank2::Rank2Form::parse("-(6^3 6)").unwrap();
    assert_eq!(
        casebook::embedding_class_count(&rec, &v.witnesses[0].witness, &t),
        Err(Error::AssumptionMissing)
    );
}

#[test]
fn phi_bounds() {
    let b: Vec<u64> = casebook::phi_order_bound(20).unwrap().into_iter().collect();
    assert_eq!(b, vec![1, 2, 3, 4, 6]);
    let b: Vec<u64> = casebook::phi_order_bound(0).unwrap().into_iter().collect();
    assert_eq!(b, vec![1, 2, 3, 4, 6, 8, 9, 12, 16, 18, 24, 27, 32, 36, 48, 54]);
    assert!(casebook::phi_order_bound(21).is_err());
}

#[test]
fn bundled_families() {
    for case in casebook::load_fu_cases().unwrap() {
        assert_eq!(casebook::family_dimension(&case.generators), case.expected_dim, "case {}", case.id);
    }
}
