use scheme_kit::fixtures::{corpus, build_da_scheme, DaParams};
use scheme_kit::mat2::Mat2;
use scheme_kit::scheme::{parse_scheme, serialize_scheme, validate_scheme, ParseError, Scheme, SECTIONS};

fn da() -> Scheme<f64> {
    build_da_scheme(&DaParams {
        family: Some((0.5, 2.0)),
        ..DaParams::new(Mat2::new(2, 1, 1, 1))
    })
    .unwrap()
}

#[test]
fn round_trip_da() {
    let s = da();
    let text = serialize_scheme(&s);
    let back: Scheme<f64> = parse_scheme(&text).unwrap();
    assert_eq!(back, s);
    assert_eq!(serialize_scheme(&back), text);
}

#[test]
fn round_trip_corpus() {
    for (name, s) in corpus() {
        let text = serialize_scheme(&s);
        let back: Scheme<f64> = parse_scheme(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(back, s, "{name}");
        assert_eq!(serialize_scheme(&back), text, "{name}");
    }
}

#[test]
fn truncated_file_names_missing_section() {
    let text = serialize_scheme(&da());
    let cut = text.find("\"tangencies\"").unwrap();
    match parse_scheme::<f64>(&text[..cut]) {
        Err(e @ ParseError::Syntax { .. }) => {
            let msg = e.to_string();
            assert!(msg.contains("tangencies"), "{msg}");
            assert!(msg.contains("attractors"), "{msg}");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn absent_section_is_rejected() {
    for section in SECTIONS {
        let mut v: serde_json::Value = serde_json::from_str(&serialize_scheme(&da())).unwrap();
        v.as_object_mut().unwrap().remove(section);
        let err = parse_scheme::<f64>(&v.to_string()).unwrap_err();
        assert_eq!(err, ParseError::MissingSection { section: section.to_string() });
    }
}

#[test]
fn empty_sections_are_accepted() {
    let mut v: serde_json::Value = serde_json::from_str(&serialize_scheme(&da())).unwrap();
    v["tangencies"] = serde_json::json!([]);
    v["windings"] = serde_json::json!([]);
    let s: Scheme<f64> = parse_scheme(&v.to_string()).unwrap();
    assert!(s.tangencies.is_empty());
}

#[test]
fn duplicate_curve_id() {
    let mut s = da();
    let dup = s.s_curves[0].id.clone();
    s.u_curves[0].id = dup.clone();
    let err = parse_scheme::<f64>(&serialize_scheme(&s)).unwrap_err();
    assert!(matches!(&err, ParseError::DuplicateId { id, .. } if *id == dup));
    assert!(err.to_string().contains("duplicate id"));
}

#[test]
fn field_error_has_location() {
    let text = serialize_scheme(&da()).replacen("\"k_f\": 1", "\"k_f\": \"one\"", 1);
    match parse_scheme::<f64>(&text) {
        Err(ParseError::Field { path, line, .. }) => {
            assert_eq!(path, "k_f");
            assert!(line > 1);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn fixtures_validate() {
    assert!(validate_scheme(&da()).is_empty());
    for (name, s) in corpus() {
        let r = validate_scheme(&s);
        assert!(r.is_empty(), "{name}: {:?}", r.violations);
    }
}

#[test]
fn lambda_outside_range_is_reported() {
    let mut s = da();
    s.tangencies[0].lambda = 1.5;
    let r = validate_scheme(&s);
    assert!(r.violations.iter().any(|v| v.message.contains("0<|λ|<1<|μ|")), "{r:?}");
}

#[test]
fn contractible_class_is_reported() {
    let mut s = da();
    s.s_curves[0].class = [0, 0];
    let r = validate_scheme(&s);
    assert!(r.violations.iter().any(|v| v.message.contains("contractible")), "{r:?}");
}

#[test]
fn dangling_reference_is_reported() {
    let mut s = da();
    s.s_curves[0].component = "nowhere".into();
    assert!(!validate_scheme(&s).is_empty());
}

#[test]
fn report_is_order_independent() {
    let mut s = da();
    s.tangencies[0].lambda = 1.5;
    s.s_curves[0].class = [0, 0];
    s.u_curves[1].class = [2, 4];
    let a = validate_scheme(&s);
    s.s_curves.reverse();
    s.u_curves.reverse();
    s.tangencies[0].points.reverse();
    let b = validate_scheme(&s);
    assert_eq!(a, b);
    assert!(a.violations.len() >= 3);
}
