"""Scale schedule, test function, images and the truncation experiments."""

from domains.counterexample.experiment import (
    BlowupRow,
    ControlRow,
    ExperimentSetup,
    blowup_experiment,
    certified_tail_bound,
    positive_control,
    schedule_for,
)
from domains.counterexample.image import ImageTable, ScaledComplex, build_h, combine_images, eval_H
from domains.counterexample.schedule import (
    AlphaSchedule,
    constant_lambda_of,
    lambda_of,
    select_alphas,
)

__all__ = [
    "AlphaSchedule",
    "BlowupRow",
    "ControlRow",
    "ExperimentSetup",
    "ImageTable",
    "ScaledComplex",
    "blowup_experiment",
    "build_h",
    "certified_tail_bound",
    "combine_images",
    "constant_lambda_of",
    "eval_H",
    "lambda_of",
    "positive_control",
    "schedule_for",
    "select_alphas",
]
