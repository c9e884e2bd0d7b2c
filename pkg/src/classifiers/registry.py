import logging
from collections.abc import Callable, Sequence

import numpy as np
from numpy.typing import NDArray

from ..core.numeric import median_sigma
from ..models.schemas import ElmModel, ExperimentConfig, KernelSpec, ModelKind, SvmModel
from . import elm, svm

logger = logging.getLogger(__name__)

type Classifier = ElmModel | SvmModel
type Matrix = NDArray[np.float64]
type Trainer = Callable[[Matrix, Sequence[int], ExperimentConfig], Classifier]


def resolve_kernel(cfg: ExperimentConfig, X: Matrix) -> KernelSpec:
    """Ядро из конфигурации; sigma по медианной эвристике, если не задана."""
    kind = cfg.resolved_kernel()
    if kind == "linear":
        return KernelSpec(kind="linear")
    if cfg.sigma is not None:
        return KernelSpec(kind="rbf", sigma=cfg.sigma)
    sigma = median_sigma(X)
    logger.info(f"sigma по медиане расстояний: {sigma:.4f}")
    return KernelSpec(kind="rbf", sigma=sigma)


def _train_elm(X: Matrix, labels: Sequence[int], cfg: ExperimentConfig) -> ElmModel:
    return elm.elm_train(X, labels, resolve_kernel(cfg, X), cfg.resolved_c())


def _train_svm(X: Matrix, labels: Sequence[int], cfg: ExperimentConfig) -> SvmModel:
    return svm.svm_train(X, labels, cfg.resolved_c(), cfg.smo, resolve_kernel(cfg, X))


_REGISTRY: dict[ModelKind, Trainer] = {
    "elm-rbf": _train_elm,
    "svm-linear": _train_svm,
}


def list_models() -> list[str]:
    """Список доступных классификаторов."""
    return sorted(_REGISTRY.keys())


def get_trainer(kind: str) -> Trainer:
    """Найти классификатор по имени."""
    if kind not in _REGISTRY:
        raise ValueError(f"Unknown model '{kind}'. Available: {list_models()}")
    return _REGISTRY[kind]  # pyright: ignore[reportArgumentType]


def train_model(cfg: ExperimentConfig, X: Matrix, labels: Sequence[int]) -> Classifier:
    return get_trainer(cfg.model_kind)(X, labels, cfg)


def decide(model: Classifier, X: Matrix) -> Matrix:
    if isinstance(model, ElmModel):
        return elm.elm_decisions(model, X)
    return svm.svm_decisions(model, X)


def predict(model: Classifier, X: Matrix) -> list[int]:
    return [elm.sign_label(float(d)) for d in decide(model, X)]
