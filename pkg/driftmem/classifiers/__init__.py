from driftmem.classifiers.knn import knn_predict, knn_predict_many
from driftmem.classifiers.full_bayes import FullBayesModel, GaussianClassStats

__all__ = ["knn_predict", "knn_predict_many", "FullBayesModel", "GaussianClassStats"]
