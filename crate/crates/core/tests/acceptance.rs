//! One pass/fail line per acceptance criterion, then a hard assert.

use hgood::table::{self, build_table, Row};

const SEED: u64 = 0;

fn report(criterion: u8, rows: hgood::Result<Vec<Row>>) -> bool {
    match rows {
        Ok(rows) => {
            let pass = rows.iter().all(|r| r.pass);
            let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.item.as_str()).collect();
            if pass {
                println!("criterion {criterion}: PASS ({} rows)", rows.len());
            } else {
                println!("criterion {criterion}: FAIL ({} of {} rows: {})", failed.len(), rows.len(), failed.join("; "));
            }
            for r in &rows {
                println!("    {} {}: {} (expected {})", if r.pass { "ok  " } else { "FAIL" }, r.item, r.observed, r.expected);
            }
            pass
        }
        Err(e) => {
            println!("criterion {criterion}: FAIL (error: {e})");
            false
        }
    }
}

#[test]
fn acceptance() {
    let mut all = true;
    all &= report(1, table::criterion_1());
    all &= report(2, table::criterion_2());
    all &= report(3, table::criterion_3());
    all &= report(4, table::criterion_4());
    all &= report(5, table::criterion_5(SEED));
    all &= report(6, table::criterion_6(SEED));
    all &= report(7, table::criterion_7(SEED));

    // criterion 8: the whole table twice, plus rows 1-7 under 1 and 8 workers
    let first = build_table(SEED).map(|t| t.to_text());
    let second = build_table(SEED).map(|t| t.to_text());
    let repeat = matches!((&first, &second), (Ok(a), Ok(b)) if a == b);
    println!("criterion 8: {} (two runs of the table are byte-identical)", if repeat { "PASS" } else { "FAIL" });
    all &= repeat;
    all &= report(8, table::criterion_8(SEED));

    assert!(all, "some acceptance criteria failed, see the lines above");
}
