from .driver import IterationRecord, Outcome, SynthResult, iteration_progress_check, synthesize
from .options import Stage, SynthOptions
from .oracle import brute_force_synth, exhibits, passing_interpretations
from .report import ReportWriter
from .stages import StageVerdict, VerifyReport, run_stages, verify
