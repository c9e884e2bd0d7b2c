from .elm import elm_decision, elm_decisions, elm_predict, elm_train
from .registry import Classifier, decide, list_models, predict, train_model
from .svm import (
    dual_objective,
    primal_objective,
    svm_decision,
    svm_decisions,
    svm_predict,
    svm_train,
    weight_vector,
)

__all__ = [
    "Classifier",
    "decide",
    "dual_objective",
    "elm_decision",
    "elm_decisions",
    "elm_predict",
    "elm_train",
    "list_models",
    "predict",
    "primal_objective",
    "svm_decision",
    "svm_decisions",
    "svm_predict",
    "svm_train",
    "train_model",
    "weight_vector",
]
