//! Ingest a record file, run a batch on four threads and print the table.
//!
//! Run with `cargo run --example batch_report`.

use knot_witt::records::{emit_json, parse_csv, parse_json, IngestOptions};
use knot_witt::report::{compute, obstruct_u1, render_table, rerun};

const TABLE: &str = "\
name,seifert,det,sigma,u1
trefoil,\"[[-1,1],[0,-1]]\",3,-2,true
figure_eight,\"[[-1,1],[0,1]]\",5,0,true
twisted,\"[[-1,1],[0,-1]]\",7,-2,
scalar_only,,15,2,false
";

pub fn run_example() -> knot_witt::Result<()> {
    let ingested = parse_csv(TABLE, IngestOptions::default())?;
    for issue in &ingested.issues {
        println!("skipped {issue}");
    }
    assert_eq!(ingested.records.len(), 3);

    let canonical = emit_json(&ingested.records);
    assert_eq!(parse_json(&canonical, IngestOptions::default())?.records, ingested.records);

    let mut batch = compute(&ingested.records, 4);
    batch.rows.extend(obstruct_u1(&ingested.records, 4).rows);
    print!("{}", render_table(&batch.rows));
    for row in &batch.rows {
        assert_eq!(&rerun(row)?, row);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> knot_witt::Result<()> {
    run_example()
}
