"""矩量、不確定關係與 Gram 矩陣"""
