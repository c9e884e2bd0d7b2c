import argparse

from ..classifiers.svm import weight_vector
from ..core.storage import model_document, save_model
from ..data_processing.wbcd_parser import fingerprint
from ..evaluation.experiments import train_split
from ..models.schemas import SvmModel
from .common import add_input, add_model_flags, experiment_config, load_dataset, settings_for


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("train", help="Обучить модель на train-части разбиения")
    add_input(parser)
    add_model_flags(parser)
    parser.add_argument("-o", "--output", required=True, help="Файл модели JSON")
    parser.set_defaults(run=run)


def run(args: argparse.Namespace) -> int:
    cfg = experiment_config(args, settings_for(args))
    records = load_dataset(args.input)
    model, plan, _ = train_split(cfg, records)

    save_model(model_document(model, cfg, fingerprint(records)), args.output)
    print(f"✅ Модель {cfg.model_kind} обучена на {len(plan.train_ids)} записях")
    print(f"   - C: {model.c}")
    sigma = f", sigma={model.kernel.sigma:.4f}" if model.kernel.sigma else ""
    print(f"   - Ядро: {model.kernel.kind}{sigma}")
    if isinstance(model, SvmModel):
        print(f"   - Опорных векторов: {len(model.alphas)}, проходов SMO: {model.passes}")
        print(f"   - Двойственная цель: {model.dual_objective or 0.0:.6f}")
        print(f"   - Нарушение ККТ: {model.kkt_violation or 0.0:.2e}")
        if model.kernel.kind == "linear":
            print(f"   - w: {[round(float(w), 4) for w in weight_vector(model)]}")
    print(f"📝 Модель сохранена: {args.output}")
    return 0
