"""Algebra of questions: propositions, question groups, information measures,
the tilde relation, actions, complex properties, two-state systems and
entangled pairs.
"""
from ._accel import backend_name
from .errors import QuestionsError
from .worlds import Proposition, WorldDistribution, WorldSet, condition, prob
from .question_groups import AskableQuestion, PureQuestion, Subject, anf, group_census, rank
from .tilde import UNCONSTRAINED, quartic_roots_oracle, tilde_closed_form, tilde_conditional
from .actions import ActionSequence, apply_sequence, give, raise_question, raise_subject

__all__ = [
    "ActionSequence",
    "AskableQuestion",
    "Proposition",
    "PureQuestion",
    "QuestionsError",
    "Subject",
    "UNCONSTRAINED",
    "WorldDistribution",
    "WorldSet",
    "anf",
    "apply_sequence",
    "backend_name",
    "condition",
    "give",
    "group_census",
    "prob",
    "quartic_roots_oracle",
    "raise_question",
    "raise_subject",
    "rank",
    "tilde_closed_form",
    "tilde_conditional",
]

__version__ = "0.1.0"
