"""掃描實驗、性質稽核與輸出"""
