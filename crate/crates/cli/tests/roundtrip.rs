use std::collections::BTreeMap;

use proptest::prelude::*;
use rayleigh_cli::output::{format_decimal, OutputRecord, ResultRow};

fn row() -> impl Strategy<Value = ResultRow> {
    (
        ".{0,12}",
        proptest::option::of("-?[0-9]{1,20}/[1-9][0-9]{0,20}"),
        proptest::option::of(any::<f64>()),
        proptest::option::of(0.0f64..1.0),
        proptest::collection::btree_map("[a-z_]{1,8}", ".{0,10}", 0..4),
    )
        .prop_map(|(label, exact, decimal, bound, fields)| ResultRow {
            label,
            exact,
            decimal: decimal.map(format_decimal),
            error_bound: bound.map(format_decimal),
            fields,
        })
}

proptest! {
    #[test]
    fn json_round_trips(
        command in "[a-z]{1,10}",
        inputs in proptest::collection::btree_map("[a-z_]{1,8}", "[ -~]{0,10}", 0..4),
        results in proptest::collection::vec(row(), 0..6),
    ) {
        let record = OutputRecord { command, version: "0.1.0".into(), inputs: inputs.into_iter().collect::<BTreeMap<_, _>>(), results };
        let text = record.to_json();
        prop_assert_eq!(OutputRecord::from_json(&text).unwrap(), record.clone());
        prop_assert_eq!(record.to_json(), text);
    }

    #[test]
    fn decimals_parse_back_to_fifteen_digits(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let s = format_decimal(x);
        let back: f64 = s.parse().unwrap();
        prop_assert!((back - x).abs() <= 1e-14 * x.abs());
        let mantissa = s.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
        prop_assert_eq!(mantissa.len(), 15);
    }

    #[test]
    fn csv_has_one_line_per_row(results in proptest::collection::vec(row(), 0..6)) {
        let record = OutputRecord { command: "c".into(), version: "v".into(), inputs: BTreeMap::new(), results };
        let text = record.to_csv();
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let count = reader.records().filter(|r| r.is_ok()).count();
        prop_assert_eq!(count, record.results.len());
    }
}
