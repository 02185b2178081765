use maidr::schema::{
    parse_selector, AttrOp, AxisInfo, BarPoint, BoxPoint, FigureSchema, GroupedPoint, HeatmapGrid, HistogramPoint,
    LayerData, LayerSchema, SeriesPoint, SubplotSchema, XValue, XyPoint,
};
use maidr::{parse_schema, serialize_schema, validate_schema};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        -1e6..1e6f64,
        (-1000i32..1000).prop_map(|v| f64::from(v) / 100.0),
        Just(0.0),
        Just(-0.0),
        Just(1e-300),
        Just(f64::MAX),
    ]
}

fn label() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 _'\"<&>-]{1,8}"
}

fn xvalue() -> impl Strategy<Value = XValue> {
    prop_oneof![finite().prop_map(XValue::Num), label().prop_map(XValue::Cat)]
}

fn box_point() -> impl Strategy<Value = BoxPoint> {
    (prop::collection::vec(-1e3..1e3f64, 5), prop::collection::vec(1.0..50.0f64, 0..4), any::<bool>()).prop_map(
        |(mut q, gaps, low)| {
            q.sort_by(f64::total_cmp);
            let outliers = gaps.iter().map(|g| if low { q[0] - g } else { q[4] + g }).collect();
            BoxPoint { lower_extreme: q[0], q1: q[1], median: q[2], q3: q[3], upper_extreme: q[4], outliers }
        },
    )
}

fn histogram() -> impl Strategy<Value = Vec<HistogramPoint>> {
    (finite().prop_filter("bounded", |v| v.abs() < 1e6), prop::collection::vec((0.01..10.0f64, 0.0..500.0f64), 1..12))
        .prop_map(|(start, bins)| {
            let mut left = start;
            bins.into_iter()
                .map(|(w, h)| {
                    let p = HistogramPoint { x: left + w / 2.0, y: h, xmin: left, xmax: left + w };
                    left += w;
                    p
                })
                .collect()
        })
}

fn heatmap() -> impl Strategy<Value = HeatmapGrid> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(finite(), c), r).prop_map(move |values| HeatmapGrid {
            values,
            row_labels: (0..r).map(|i| format!("r{i}")).collect(),
            col_labels: (0..c).map(|i| format!("c{i}")).collect(),
        })
    })
}

fn layer_data() -> impl Strategy<Value = LayerData> {
    let xy = || prop::collection::vec((finite(), finite()).prop_map(|(x, y)| XyPoint { x, y }), 1..20);
    let grouped =
        || prop::collection::vec((xvalue(), label(), finite()).prop_map(|(x, fill, y)| GroupedPoint { x, fill, y }), 1..12);
    prop_oneof![
        prop::collection::vec((xvalue(), finite()).prop_map(|(x, y)| BarPoint { x, y }), 1..12).prop_map(LayerData::Bar),
        grouped().prop_map(LayerData::StackedBar),
        grouped().prop_map(LayerData::DodgedBar),
        histogram().prop_map(LayerData::Histogram),
        xy().prop_map(LayerData::Line),
        xy().prop_map(LayerData::Scatter),
        prop::collection::vec(
            (finite(), finite(), label()).prop_map(|(x, y, series_label)| SeriesPoint { x, y, series_label }),
            1..20
        )
        .prop_map(LayerData::MultiLine),
        prop::collection::vec(box_point(), 1..5).prop_map(LayerData::BoxHorizontal),
        prop::collection::vec(box_point(), 1..5).prop_map(LayerData::BoxVertical),
        heatmap().prop_map(LayerData::Heatmap),
    ]
}

fn axis_info() -> impl Strategy<Value = AxisInfo> {
    (label(), label(), label(), prop::option::of(prop::collection::hash_set(label(), 1..5))).prop_map(
        |(x_label, y_label, title, levels)| AxisInfo {
            x_label,
            y_label,
            title,
            x_levels: levels.map(|l| l.into_iter().collect()),
            y_levels: None,
        },
    )
}

fn layer() -> impl Strategy<Value = LayerSchema> {
    (axis_info(), layer_data(), 1u32..500).prop_map(|(axes, data, n)| LayerSchema {
        axes,
        data,
        selector: format!("[maidr-id=\"maidr-1-{n}\"], [maidr-id^=\"maidr-1-\"]"),
    })
}

fn figure() -> impl Strategy<Value = FigureSchema> {
    prop::collection::vec(prop::collection::vec(layer(), 1..3), 1..4).prop_map(|subs| FigureSchema {
        id: "maidr-fig-1".into(),
        subplots: subs
            .into_iter()
            .enumerate()
            .map(|(i, layers)| SubplotSchema { row: i / 2, col: i % 2, layers })
            .collect(),
    })
}

proptest! {
    #[test]
    fn valid_schemas_round_trip_byte_identically(schema in figure()) {
        prop_assert!(validate_schema(&schema).is_empty());
        let json = serialize_schema(&schema).unwrap();
        let back = parse_schema(&json).unwrap();
        prop_assert_eq!(&back, &schema);
        prop_assert_eq!(serialize_schema(&back).unwrap(), json);
    }

    #[test]
    fn non_finite_values_are_rejected(schema in figure(), bad in prop_oneof![Just(f64::NAN), Just(f64::INFINITY), Just(f64::NEG_INFINITY)]) {
        let mut schema = schema;
        match &mut schema.subplots[0].layers[0].data {
            LayerData::Bar(v) => v[0].y = bad,
            LayerData::StackedBar(v) | LayerData::DodgedBar(v) => v[0].y = bad,
            LayerData::Histogram(v) => v[0].y = bad,
            LayerData::Line(v) | LayerData::Scatter(v) => v[0].x = bad,
            LayerData::MultiLine(v) => v[0].y = bad,
            LayerData::BoxHorizontal(v) | LayerData::BoxVertical(v) => v[0].median = bad,
            LayerData::Heatmap(g) => g.values[0][0] = bad,
        }
        prop_assert!(!validate_schema(&schema).is_empty());
        prop_assert!(serialize_schema(&schema).is_err());
    }

    #[test]
    fn misordered_boxes_are_rejected(b in box_point(), bump in 1.0..100.0f64) {
        let mut b = b;
        b.q1 = b.q3 + bump;
        let schema = FigureSchema {
            id: "maidr-fig-1".into(),
            subplots: vec![SubplotSchema { row: 0, col: 0, layers: vec![LayerSchema {
                axes: AxisInfo::default(),
                data: LayerData::BoxVertical(vec![b]),
                selector: "[maidr-id^=\"maidr-1-\"]".into(),
            }] }],
        };
        prop_assert!(!validate_schema(&schema).is_empty());
    }

    #[test]
    fn id_selectors_parse_to_their_value(ids in prop::collection::vec("[a-z0-9-]{1,12}", 1..6)) {
        let text = ids.iter().map(|i| format!("[maidr-id=\"{i}\"]")).collect::<Vec<_>>().join(", ");
        let parsed = parse_selector(&text).unwrap();
        prop_assert_eq!(parsed.len(), ids.len());
        for (sel, id) in parsed.iter().zip(&ids) {
            prop_assert_eq!(sel.name.as_str(), "maidr-id");
            prop_assert_eq!(sel.test.clone(), Some((AttrOp::Equals, id.clone())));
            prop_assert!(sel.matches(Some(id)));
            let other = format!("{id}x");
            prop_assert!(!sel.matches(Some(&other)));
        }
    }
}
