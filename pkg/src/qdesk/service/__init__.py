"""FastAPI service and shared request/response models."""
