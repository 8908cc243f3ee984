from .notation import NotationState, notation_for_distance, pass_notation, fail_notation
from .session import CalibrationTarget, CalibrationSession, Rail, load_calibration_job
from .qc import BoardQCRecord, qc_board, apply_anchor, qc_report

__all__ = [
    "NotationState",
    "notation_for_distance",
    "pass_notation",
    "fail_notation",
    "CalibrationTarget",
    "CalibrationSession",
    "Rail",
    "load_calibration_job",
    "BoardQCRecord",
    "qc_board",
    "apply_anchor",
    "qc_report",
]
