from driftmem.sampling.borderline_smote import MinorityPartition, borderline_smote, classify_minority

__all__ = ["MinorityPartition", "borderline_smote", "classify_minority"]
