from django.urls import path, include
from rest_framework.routers import DefaultRouter
from .views import KnotViewSet, DistanceView

router = DefaultRouter()
router.register(r'knots', KnotViewSet)

urlpatterns = [
    path('distance/', DistanceView.as_view(), name='distance'),
    path('', include(router.urls)),
]
