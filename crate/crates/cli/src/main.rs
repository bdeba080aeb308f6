mod commands;
mod expr;
mod fanio;
mod opts;
mod render;
mod svg;

use clap::Parser;
use serde_json::json;

use immaculatum::asymptotics::DEFAULT_CELL_LIMIT;
use immaculatum::homology::DEFAULT_SUBSET_LIMIT;

use commands::{usage, Failure};
use opts::{Command, Format, Opts};

fn main() {
    let opts = match Opts::try_parse() {
        Ok(opts) => opts,
        Err(e) => {
            // help and version requests are not errors
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    match run(opts) {
        Ok(output) => {
            print!("{output}");
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message.trim_end());
            std::process::exit(failure.code);
        }
    }
}

fn run(opts: Opts) -> Result<String, Failure> {
    let fan = load_fan(&opts)?;
    let max_subsets = opts
        .max_subsets
        .or_else(|| {
            std::env::var("IMMACULATUM_MAX_SUBSETS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(DEFAULT_SUBSET_LIMIT);
    let max_cells = opts.max_cells.unwrap_or(DEFAULT_CELL_LIMIT);

    // `validate` reports violations instead of failing early.
    if let Command::Validate = opts.command {
        let (ok, text, value) = commands::cmd_validate(&fan);
        let output = match opts.format {
            Format::Text => text,
            Format::Json => envelope(&fan, "validate", value),
        };
        if ok {
            return Ok(output);
        }
        // the report itself is the output; the exit code flags the failure
        print!("{output}");
        std::process::exit(2);
    }

    let ctx = commands::make_context(fan, max_subsets, max_cells)?;
    let command_name = opts.command.name();
    let (text, value) = match &opts.command {
        Command::Validate => unreachable!("handled above"),
        Command::Picard => commands::cmd_picard(&ctx),
        Command::Tempting => commands::cmd_tempting(&ctx)?,
        Command::Cones => commands::cmd_cones(&ctx)?,
        Command::Zonotope => commands::cmd_zonotope(&ctx)?,
        Command::Cohomology { divisor, class } => {
            commands::cmd_cohomology(&ctx, divisor.as_deref(), class.as_deref())?
        }
        Command::Immaculate { divisor, class } => {
            commands::cmd_immaculate(&ctx, divisor.as_deref(), class.as_deref())?
        }
        Command::Scan { box_spec } => commands::cmd_scan(&ctx, box_spec)?,
        Command::Infinite => commands::cmd_infinite(&ctx)?,
        Command::Infinity => commands::cmd_infinity(&ctx)?,
        Command::Witness { direction, count } => {
            commands::cmd_witness(&ctx, direction, *count)?
        }
        Command::BwCheck { divisor } => commands::cmd_bw_check(&ctx, divisor)?,
        Command::Plot { out, box_spec } => {
            commands::cmd_plot(&ctx, out, box_spec.as_deref())?
        }
    };
    Ok(match opts.format {
        Format::Text => text,
        Format::Json => envelope(&ctx.fan, command_name, value),
    })
}

fn load_fan(opts: &Opts) -> Result<immaculatum::fan::StackyFan, Failure> {
    match (&opts.file, &opts.builtin) {
        (Some(path), None) => fanio::read_fan_file(path).map_err(|message| Failure {
            code: 2,
            message,
        }),
        (None, Some(expr)) => expr::parse_builtin(expr).map_err(usage),
        _ => Err(usage("provide exactly one fan source: --file or --builtin")),
    }
}

fn envelope(
    fan: &immaculatum::fan::StackyFan,
    command: &str,
    result: serde_json::Value,
) -> String {
    let value = json!({
        "fan": render::json_fan(fan),
        "command": command,
        "result": result,
    });
    let mut out = serde_json::to_string_pretty(&value).expect("serializable");
    out.push('\n');
    out
}
